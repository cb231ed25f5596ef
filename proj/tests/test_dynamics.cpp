#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "sandpile/dynamics.hpp"
#include "sandpile/graph.hpp"
#include "sandpile/linalg.hpp"
#include "sandpile/verify.hpp"

using namespace sandpile;

namespace {

// One vertex at a time, always the lowest index; termination and the final
// state are order-independent, which is exactly what this oracle checks.
StabilizeResult naive_relax(const SinkedGraph& g, Config c) {
    const std::size_t n = g.size();
    std::vector<long long> odo(n, 0);
    for (;;) {
        std::size_t v = n;
        for (std::size_t i = 0; i < n; ++i)
            if (c[i] >= g.degree(i)) {
                v = i;
                break;
            }
        if (v == n) break;
        c[v] -= g.degree(v);
        odo[v] += 1;
        for (std::size_t w = 0; w < n; ++w) c[w] += g.mult(v, w);
    }
    return {std::move(c), std::move(odo)};
}

Config random_config(std::mt19937_64& rng, const SinkedGraph& g, long long max_per_vertex) {
    Config c(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        c[v] = static_cast<long long>(rng() % (max_per_vertex + 1));
    return c;
}

Config max_stable(const SinkedGraph& g) {
    Config c(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) c[v] = g.degree(v) - 1;
    return c;
}

}  // namespace

TEST_CASE("stabilize on pinned configurations") {
    SinkedGraph g = rectangle_graph(2, 2);
    StabilizeResult r = stabilize(g, {4});
    CHECK(r.config == Config{0});
    CHECK(r.odometer == std::vector<long long>{1});

    r = stabilize(g, {9});
    CHECK(r.config == Config{1});
    CHECK(r.odometer == std::vector<long long>{2});

    CHECK(stabilize(g, {0}).config == Config{0});
    CHECK(stabilize(path_graph(4), {1, 1, 1}).odometer == std::vector<long long>{0, 0, 0});

    CHECK_THROWS_AS(stabilize(g, {-1}), std::invalid_argument);
    CHECK_THROWS_AS(stabilize(g, {0, 0}), std::invalid_argument);
}

TEST_CASE("stabilize agrees with the one-at-a-time oracle") {
    std::mt19937_64 rng(23);
    std::vector<SinkedGraph> graphs = {path_graph(5), rectangle_graph(3, 3),
                                       rectangle_graph(2, 4)};
    for (const auto& g : graphs)
        for (int trial = 0; trial < 40; ++trial) {
            Config c = random_config(rng, g, 3 * 4);
            StabilizeResult expected = naive_relax(g, c);
            for (TopplePolicy policy : {TopplePolicy::Queue, TopplePolicy::MaxFirst}) {
                StabilizeResult got = stabilize(g, c, policy);
                CHECK(got.config == expected.config);
                CHECK(got.odometer == expected.odometer);
            }
        }
}

TEST_CASE("toppling conserves sand through the laplacian") {
    std::mt19937_64 rng(29);
    for (const auto& g : {path_graph(7), rectangle_graph(3, 4)})
        for (int trial = 0; trial < 30; ++trial) {
            Config c = random_config(rng, g, 12);
            CHECK(conservation_holds(g, c, TopplePolicy::Queue));
            CHECK(conservation_holds(g, c, TopplePolicy::MaxFirst));
        }
}

TEST_CASE("burning configuration matches the laplacian identity") {
    for (const auto& g : {path_graph(5), rectangle_graph(3, 3), rectangle_graph(4, 4)}) {
        Config beta = burning_config(g);
        std::vector<Int> ones(g.size(), 1);
        std::vector<Int> l1 = reduced_laplacian(g).apply(ones);
        for (std::size_t v = 0; v < g.size(); ++v) CHECK(Int(beta[v]) == -l1[v]);
    }
}

TEST_CASE("burning test") {
    SinkedGraph g = rectangle_graph(2, 2);
    for (long long x = 0; x < 4; ++x) CHECK(is_recurrent(g, {x}));

    SinkedGraph p3 = path_graph(3);
    CHECK_FALSE(is_recurrent(p3, {0, 0}));
    CHECK(is_recurrent(p3, {0, 1}));
    CHECK(is_recurrent(p3, {1, 0}));
    CHECK(is_recurrent(p3, {1, 1}));

    CHECK_THROWS_AS(is_recurrent(g, {4}), std::invalid_argument);
    CHECK_THROWS_AS(is_recurrent(p3, {-1, 0}), std::invalid_argument);

    for (const auto& g2 : {path_graph(6), rectangle_graph(3, 3), rectangle_graph(2, 5)})
        CHECK(is_recurrent(g2, max_stable(g2)));
}

TEST_CASE("recurrent representative") {
    SinkedGraph g = rectangle_graph(2, 2);
    CHECK(recurrent_representative(g, {-1}) == Config{3});
    CHECK(recurrent_representative(g, {4}) == Config{0});
    CHECK(recurrent_representative(g, {2}) == Config{2});

    SinkedGraph p3 = path_graph(3);
    Config rep = recurrent_representative(p3, {0, 0});
    CHECK(is_recurrent(p3, rep));

    // stays in the toppling coset: the difference solves L x = rep - f
    std::mt19937_64 rng(31);
    for (const auto& g2 : {p3, path_graph(5), rectangle_graph(3, 3)}) {
        IntMatrix L = reduced_laplacian(g2);
        for (int trial = 0; trial < 15; ++trial) {
            Config f(g2.size());
            for (auto& x : f) x = static_cast<long long>(rng() % 21) - 10;
            Config r = recurrent_representative(g2, f);
            REQUIRE(is_recurrent(g2, r));
            std::vector<Int> diff(g2.size());
            for (std::size_t v = 0; v < g2.size(); ++v) diff[v] = Int(r[v]) - f[v];
            for (const Rat& x : solve_rational(L, diff)) CHECK(is_integer(x));

            // constant on cosets
            Config h(g2.size());
            for (auto& x : h) x = static_cast<long long>(rng() % 5) - 2;
            std::vector<Int> lh = L.apply(std::vector<Int>(h.begin(), h.end()));
            Config shifted(g2.size());
            for (std::size_t v = 0; v < g2.size(); ++v) shifted[v] = f[v] + to_ll(lh[v]);
            CHECK(recurrent_representative(g2, shifted) == r);
        }
    }

    // already-recurrent configurations are fixed points
    for (const auto& r : enumerate_recurrent(path_graph(5)))
        CHECK(recurrent_representative(path_graph(5), r) == r);
}

TEST_CASE("group law on recurrents") {
    SinkedGraph g = rectangle_graph(2, 2);
    CHECK(group_add(g, {3}, {2}) == Config{1});
    CHECK_THROWS_AS(group_add(path_graph(3), {0, 0}, {1, 1}), std::invalid_argument);

    SinkedGraph p4 = path_graph(4);
    Config e = identity_element(p4);
    REQUIRE(is_recurrent(p4, e));
    for (const auto& r : enumerate_recurrent(p4)) {
        CHECK(group_add(p4, e, r) == r);
        Config inv = group_inverse(p4, r);
        CHECK(group_add(p4, r, inv) == e);
    }

    SinkedGraph g23 = rectangle_graph(2, 3);
    std::vector<Config> rec = enumerate_recurrent(g23);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const Config& a = rec[rng() % rec.size()];
        const Config& b = rec[rng() % rec.size()];
        const Config& c = rec[rng() % rec.size()];
        CHECK(group_add(g23, a, b) == group_add(g23, b, a));
        CHECK(group_add(g23, group_add(g23, a, b), c) ==
              group_add(g23, a, group_add(g23, b, c)));
    }
}

TEST_CASE("recurrent enumeration") {
    CHECK(enumerate_recurrent(rectangle_graph(2, 2)).size() == 4);
    CHECK(enumerate_recurrent(path_graph(3)).size() == 3);
    CHECK(enumerate_recurrent(rectangle_graph(2, 3)).size() == 15);
    CHECK(enumerate_recurrent(rectangle_graph(3, 3)).size() == 192);
    CHECK_THROWS_AS(enumerate_recurrent(rectangle_graph(3, 3), 100), std::length_error);
}
