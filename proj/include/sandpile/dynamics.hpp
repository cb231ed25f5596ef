#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "sandpile/graph.hpp"
#include "sandpile/int_matrix.hpp"

namespace sandpile {

// Chip counts per non-sink vertex. 64-bit is ample for the sizes handled
// here; the exact-arithmetic layer is only needed for matrix algebra.
using Config = std::vector<long long>;

enum class TopplePolicy { Queue, MaxFirst };

struct StabilizeResult {
    Config config;
    std::vector<long long> odometer;  // topplings per vertex
};

// Topple vertices with value >= degree until none remain. The result is
// order-independent; the policy just picks the order.
inline StabilizeResult stabilize(const SinkedGraph& g, Config c,
                                 TopplePolicy policy = TopplePolicy::Queue) {
    const std::size_t n = g.size();
    if (c.size() != n) throw std::invalid_argument("stabilize: config size mismatch");
    for (long long x : c)
        if (x < 0) throw std::invalid_argument("stabilize: negative sand");
    std::vector<long long> odo(n, 0);

    auto fire = [&](std::size_t v) {
        long long d = g.degree(v);
        long long t = c[v] / d;  // c[v] >= d > 0 here, so t >= 1
        c[v] -= t * d;
        odo[v] += t;
        for (std::size_t w = 0; w < n; ++w)
            if (int m = g.mult(v, w); m > 0) c[w] += t * m;
    };

    if (policy == TopplePolicy::Queue) {
        std::vector<char> queued(n, 0);
        std::queue<std::size_t> q;
        for (std::size_t v = 0; v < n; ++v)
            if (c[v] >= g.degree(v)) {
                q.push(v);
                queued[v] = 1;
            }
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            queued[v] = 0;
            if (c[v] < g.degree(v)) continue;
            fire(v);
            for (std::size_t w = 0; w < n; ++w)
                if (g.mult(v, w) > 0 && !queued[w] && c[w] >= g.degree(w)) {
                    q.push(w);
                    queued[w] = 1;
                }
        }
    } else {
        for (;;) {
            std::size_t best = n;
            long long excess = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (c[v] >= g.degree(v) && (best == n || c[v] - g.degree(v) > excess)) {
                    best = v;
                    excess = c[v] - g.degree(v);
                }
            if (best == n) break;
            fire(best);
        }
    }
    return {std::move(c), std::move(odo)};
}

inline bool is_stable(const SinkedGraph& g, const Config& c) {
    for (std::size_t v = 0; v < g.size(); ++v)
        if (c[v] < 0 || c[v] >= g.degree(v)) return false;
    return true;
}

// beta(v) = s(v), the number of sink edges at v; equals -L*1 for the reduced
// Laplacian L, so adding beta stays inside the toppling lattice.
inline Config burning_config(const SinkedGraph& g) {
    Config b(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) b[v] = g.sink_edges(v);
    return b;
}

// Dhar burning test: a stable c is recurrent iff adding beta and stabilizing
// topples every vertex exactly once and returns to c.
inline bool is_recurrent(const SinkedGraph& g, const Config& c) {
    if (!is_stable(g, c)) throw std::invalid_argument("is_recurrent: input is not stable");
    Config plus = c;
    const Config beta = burning_config(g);
    for (std::size_t v = 0; v < g.size(); ++v) plus[v] += beta[v];
    StabilizeResult r = stabilize(g, std::move(plus));
    if (r.config != c) return false;
    for (long long t : r.odometer)
        if (t != 1) return false;
    return true;
}

// Unique recurrent configuration in c + L Z^n. Anti-topples negative
// vertices into range, then iterates c -> (c + beta)~ to its fixed point;
// every step adds a lattice element, so the class never moves.
inline Config recurrent_representative(const SinkedGraph& g, Config c) {
    const std::size_t n = g.size();
    if (c.size() != n)
        throw std::invalid_argument("recurrent_representative: config size mismatch");
    for (;;) {
        std::size_t v = n;
        for (std::size_t i = 0; i < n; ++i)
            if (c[i] < 0) {
                v = i;
                break;
            }
        if (v == n) break;
        long long d = g.degree(v);
        long long t = (-c[v] + d - 1) / d;  // anti-topple enough to reach >= 0
        c[v] += t * d;
        for (std::size_t w = 0; w < n; ++w)
            if (int m = g.mult(v, w); m > 0) c[w] -= t * m;
    }
    const Config beta = burning_config(g);
    c = stabilize(g, std::move(c)).config;
    for (;;) {
        Config plus = c;
        for (std::size_t v = 0; v < n; ++v) plus[v] += beta[v];
        Config next = stabilize(g, std::move(plus)).config;
        if (next == c) return c;
        c = std::move(next);
    }
}

// Group law on recurrents: pointwise sum, then stabilize.
inline Config group_add(const SinkedGraph& g, const Config& a, const Config& b) {
    if (!is_recurrent(g, a) || !is_recurrent(g, b))
        throw std::invalid_argument("group_add: operands must be recurrent");
    Config s(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) s[v] = a[v] + b[v];
    return stabilize(g, std::move(s)).config;
}

inline Config identity_element(const SinkedGraph& g) {
    return recurrent_representative(g, Config(g.size(), 0));
}

inline Config group_inverse(const SinkedGraph& g, const Config& a) {
    if (!is_recurrent(g, a))
        throw std::invalid_argument("group_inverse: operand must be recurrent");
    Config neg(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) neg[v] = -a[v];
    return recurrent_representative(g, std::move(neg));
}

// All recurrent configurations, by filtering the stable ones. The stable
// count is prod deg(v); refuses to run past `cap` of them.
inline std::vector<Config> enumerate_recurrent(const SinkedGraph& g,
                                               unsigned long long cap = 2000000) {
    const std::size_t n = g.size();
    unsigned long long total = 1;
    for (std::size_t v = 0; v < n; ++v) {
        unsigned long long d = static_cast<unsigned long long>(g.degree(v));
        if (total > cap / d)
            throw std::length_error("enumerate_recurrent: stable-state space exceeds cap");
        total *= d;
    }
    std::vector<Config> out;
    Config c(n, 0);
    for (;;) {
        if (is_recurrent(g, c)) out.push_back(c);
        std::size_t v = 0;
        while (v < n && c[v] == g.degree(v) - 1) {
            c[v] = 0;
            ++v;
        }
        if (v == n) break;
        ++c[v];
    }
    return out;
}

}  // namespace sandpile
