#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sandpile {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals.
// No floating point enters any computation in this library.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Floor division (rounds toward -inf, unlike cpp_int's truncating /).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Floor of a rational.
inline Int rat_floor(const Rat& r) {
    return floor_div(numerator(r), denominator(r));
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Canonical representative in [0,1) of a class in Q/Z.
inline Rat mod1(const Rat& r) {
    return r - Rat(rat_floor(r));
}

// Additive order of r + Z in Q/Z, i.e. the denominator in lowest terms.
inline Int circle_order(const Rat& r) { return denominator(mod1(r)); }

inline Int int_lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

// Narrowing with a range check; values here are desk-scale by contract.
inline long long to_ll(const Int& x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
    return x.convert_to<long long>();
}

// "num/den" with den >= 1, lowest terms; integers keep an explicit "/1".
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

}  // namespace sandpile
