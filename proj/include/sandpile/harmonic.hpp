#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sandpile/dynamics.hpp"
#include "sandpile/graph.hpp"
#include "sandpile/linalg.hpp"
#include "sandpile/numeric.hpp"

namespace sandpile {

// A rational point of the circle-valued function space (R/Z)^Gamma, stored
// as the canonical representative in [0,1)^Gamma.
using CircleVec = RationalVec;

inline CircleVec circle_normalize(CircleVec v) {
    for (auto& x : v) x = mod1(x);
    return v;
}

inline CircleVec circle_add(const CircleVec& a, const CircleVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("circle_add: length mismatch");
    CircleVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod1(a[i] + b[i]);
    return r;
}

inline CircleVec circle_neg(const CircleVec& a) {
    CircleVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod1(-a[i]);
    return r;
}

inline CircleVec circle_scale(const Int& k, const CircleVec& a) {
    CircleVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod1(Rat(k) * a[i]);
    return r;
}

inline bool circle_is_zero(const CircleVec& a) {
    for (const auto& x : a)
        if (mod1(x) != 0) return false;
    return true;
}

// Additive order in (Q/Z)^Gamma: lcm of the denominators.
inline Int circle_element_order(const CircleVec& a) {
    Int o = 1;
    for (const auto& x : a) o = int_lcm(o, circle_order(x));
    return o;
}

inline bool entries_integral(const RationalVec& v) {
    for (const auto& x : v)
        if (!is_integer(x)) return false;
    return true;
}

// psi is harmonic when the interior Laplacian rows of its representative
// are integral, i.e. psi lies in ker(Laplacian restricted to the interior)
// over R/Z.
inline bool is_harmonic(const SinkedGraph& g, const CircleVec& psi) {
    if (psi.size() != g.size()) throw std::invalid_argument("is_harmonic: length mismatch");
    return entries_integral(interior_laplacian(g).apply(circle_normalize(psi)));
}

// Strictly harmonic: the full Laplacian image is integral (boundary rows
// included). These are exactly the images of integer configurations.
inline bool is_strict_harmonic(const SinkedGraph& g, const CircleVec& psi) {
    if (psi.size() != g.size())
        throw std::invalid_argument("is_strict_harmonic: length mismatch");
    return entries_integral(reduced_laplacian(g).apply(circle_normalize(psi)));
}

// The isomorphism G(Gamma) = Coker(L) -> strictly harmonic circle functions:
// f -> L^{-1} f mod 1. Kernel of the underlying map on Z^Gamma is exactly
// L Z^Gamma.
inline CircleVec strict_harmonic_from_config(const SinkedGraph& g, const Config& f) {
    if (f.size() != g.size())
        throw std::invalid_argument("strict_harmonic_from_config: length mismatch");
    std::vector<Int> b(f.begin(), f.end());
    RationalVec x = solve_rational(reduced_laplacian(g), b);
    return circle_normalize(std::move(x));
}

// Inverse direction: the canonical representative psi-hat has integral
// image f = L psi-hat, a configuration in the coset the isomorphism came
// from.
inline Config config_from_strict_harmonic(const SinkedGraph& g, const CircleVec& psi) {
    if (psi.size() != g.size())
        throw std::invalid_argument("config_from_strict_harmonic: length mismatch");
    RationalVec y = reduced_laplacian(g).apply(circle_normalize(psi));
    Config f(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!is_integer(y[i]))
            throw std::invalid_argument("config_from_strict_harmonic: input is not strictly harmonic");
        f[i] = to_ll(numerator(y[i]));
    }
    return f;
}

// Extended states: integral sand in the interior, rational on the boundary.
// Same connecting formula L^{-1} x mod 1; the result is harmonic but its
// boundary Laplacian values keep the fractional sand.
inline CircleVec extended_from_state(const SinkedGraph& g, const RationalVec& x) {
    if (x.size() != g.size())
        throw std::invalid_argument("extended_from_state: length mismatch");
    for (std::size_t v : g.interior())
        if (!is_integer(x[v]))
            throw std::invalid_argument("extended_from_state: interior entries must be integers");
    RationalVec y = solve_rational(reduced_laplacian(g), x);
    return circle_normalize(std::move(y));
}

// The /Z map of the boundary exact sequence: fractional parts of the
// boundary Laplacian values of the canonical representative. Zero exactly
// on the strictly harmonic subgroup. Representative-independent: shifting
// psi-hat by integers shifts L psi-hat by integers.
inline RationalVec boundary_fractional_part(const SinkedGraph& g, const CircleVec& psi) {
    if (!is_harmonic(g, psi))
        throw std::invalid_argument("boundary_fractional_part: input is not harmonic");
    RationalVec y = reduced_laplacian(g).apply(circle_normalize(psi));
    RationalVec out;
    for (std::size_t v : g.boundary()) out.push_back(mod1(y[v]));
    return out;
}

// Integer-valued harmonic functions H_Z = ker(interior Laplacian) over Z,
// a saturated lattice of rank |boundary|.
struct HarmonicLattice {
    IntMatrix basis;  // one column per basis vector, |Gamma| rows
    std::size_t rank() const { return basis.cols(); }
};

inline HarmonicLattice integer_harmonic_basis(const SinkedGraph& g) {
    return HarmonicLattice{kernel_basis(interior_laplacian(g))};
}

// Coker of the interior Laplacian, Z^{interior} / L° Z^Gamma. Trivial
// exactly when boundary deltas generate the whole sandpile group.
inline GroupStructure interior_cokernel(const SinkedGraph& g) {
    return cokernel_structure(interior_laplacian(g));
}

// Columns e_v of the identity for the listed vertices.
inline IntMatrix delta_columns(std::size_t n, const std::vector<std::size_t>& verts) {
    IntMatrix m(n, verts.size());
    for (std::size_t j = 0; j < verts.size(); ++j) m.at(verts[j], j) = 1;
    return m;
}

// |G_0|, the order of the subgroup generated by adding sand at the
// boundary. Computed per the boundary exact sequence as
// |det L| / |Coker L°| and cross-checked against the direct subgroup-order
// computation in Coker L.
inline Int boundary_subgroup_order(const SinkedGraph& g) {
    IntMatrix L = reduced_laplacian(g);
    Int det = abs(det_exact(L));
    GroupStructure coker = interior_cokernel(g);
    if (coker.free_rank != 0)
        throw std::logic_error("boundary_subgroup_order: interior Laplacian lost rank");
    Int via_sequence = det / coker.torsion_order();
    Int direct = subgroup_order_in_cokernel(L, delta_columns(g.size(), g.boundary()));
    if (via_sequence != direct)
        throw std::logic_error("boundary_subgroup_order: cross-check failed: " +
                               via_sequence.str() + " vs " + direct.str());
    return via_sequence;
}

// The self-duality pairing Q(f + L Z^Gamma, psi) = sum f(v) psi(v) mod 1.
// Well-defined on cosets: adding a Laplacian column changes the sum by
// (L psi)(w), an integer when psi is strictly harmonic.
inline Rat pairing(const SinkedGraph& g, const Config& f, const CircleVec& psi) {
    if (f.size() != g.size() || psi.size() != g.size())
        throw std::invalid_argument("pairing: length mismatch");
    if (!is_strict_harmonic(g, psi))
        throw std::invalid_argument("pairing: second argument is not strictly harmonic");
    Rat q = 0;
    for (std::size_t v = 0; v < g.size(); ++v) q += Rat(f[v]) * mod1(psi[v]);
    return mod1(q);
}

// Smith-coordinate view of Coker L, plus the strictly harmonic realization
// of each coset. Enumeration walks the mixed-radix coordinate box.
struct CosetSystem {
    SmithDecomposition dec;
    std::vector<Int> moduli;  // diagonal of S, all positive

    std::size_t dim() const { return moduli.size(); }

    Int order() const {
        Int o = 1;
        for (const auto& m : moduli) o *= m;
        return o;
    }
};

inline CosetSystem coset_system(const SinkedGraph& g) {
    CosetSystem c{snf(reduced_laplacian(g)), {}};
    if (c.dec.rank() != g.size())
        throw std::logic_error("coset_system: reduced Laplacian is singular");
    c.moduli = c.dec.diagonal();
    return c;
}

// Coordinates of the coset of f: (U f) mod s, componentwise.
inline std::vector<Int> coset_coords(const CosetSystem& c, const Config& f) {
    std::vector<Int> b(f.begin(), f.end());
    std::vector<Int> y = c.dec.u.apply(b);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] %= c.moduli[i];
        if (y[i] < 0) y[i] += c.moduli[i];
    }
    return y;
}

// The strictly harmonic function of the coset with coordinates y:
// mod1(V (y_i / s_i)), from L^{-1} = V S^{-1} U.
inline CircleVec coset_element(const CosetSystem& c, const std::vector<Int>& y) {
    RationalVec z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) z[i] = Rat(y[i], c.moduli[i]);
    return circle_normalize(c.dec.v.apply(z));
}

// Order of the coset with coordinates y in the product of Z/s_i.
inline Int coset_order(const CosetSystem& c, const std::vector<Int>& y) {
    Int o = 1;
    for (std::size_t i = 0; i < y.size(); ++i) {
        Int d = boost::multiprecision::gcd(y[i], c.moduli[i]);
        o = int_lcm(o, c.moduli[i] / d);
    }
    return o;
}

// All elements of the strictly harmonic group, one CircleVec per coset.
inline std::vector<CircleVec> enumerate_strict_harmonic(const SinkedGraph& g,
                                                        const Int& cap = 2000) {
    CosetSystem c = coset_system(g);
    if (c.order() > cap)
        throw std::length_error("enumerate_strict_harmonic: group order exceeds cap");
    std::vector<CircleVec> out;
    std::vector<Int> y(c.dim(), 0);
    for (;;) {
        out.push_back(coset_element(c, y));
        std::size_t i = 0;
        while (i < y.size() && y[i] == c.moduli[i] - 1) {
            y[i] = 0;
            ++i;
        }
        if (i == y.size()) break;
        ++y[i];
    }
    return out;
}

// Literal nondegeneracy of Q over the enumerated group: every nonzero
// element is separated from 0 by some generator delta_w, i.e. has a nonzero
// coordinate. The enumeration itself must be faithful: all |G| vectors
// distinct.
inline bool pairing_nondegenerate(const SinkedGraph& g, const Int& cap = 2000) {
    std::vector<CircleVec> all = enumerate_strict_harmonic(g, cap);
    std::vector<CircleVec> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;  // two cosets collapsed: Q could not separate them
    for (const auto& psi : all) {
        if (circle_is_zero(psi)) continue;
        bool separated = false;
        for (std::size_t w = 0; w < g.size() && !separated; ++w)
            separated = (mod1(psi[w]) != 0);  // Q(delta_w, psi) = psi(w)
        if (!separated) return false;
    }
    return true;
}

// Pullback of a circle function along an embedding.
inline CircleVec restrict_to(const CircleVec& psi, const Embedding& e) {
    if (psi.size() != e.target->size())
        throw std::invalid_argument("restrict_to: length mismatch with embedding target");
    CircleVec out(e.source->size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = mod1(psi[e.vertex_map[v]]);
    return out;
}

}  // namespace sandpile
