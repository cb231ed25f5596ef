#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "sandpile/graph.hpp"
#include "sandpile/harmonic.hpp"
#include "sandpile/verify.hpp"

namespace sandpile {

// Graph wire format:
//   {vertices:[0..n-1], coords?:[[x,y]...], adjacency:[[i,j,mult]...],
//    sink:[[i,mult]...]}
// nlohmann's object keeps keys sorted, so serialization is canonical.
inline nlohmann::json graph_to_json(const SinkedGraph& g) {
    nlohmann::json j;
    std::vector<std::size_t> verts(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) verts[v] = v;
    j["vertices"] = verts;
    if (g.has_coords()) {
        auto coords = nlohmann::json::array();
        for (const auto& [x, y] : g.coords()) coords.push_back({x, y});
        j["coords"] = coords;
    }
    auto adjacency = nlohmann::json::array();
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (g.mult(u, v) > 0) adjacency.push_back({u, v, g.mult(u, v)});
    j["adjacency"] = adjacency;
    auto sink = nlohmann::json::array();
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.sink_edges(v) > 0) sink.push_back({v, g.sink_edges(v)});
    j["sink"] = sink;
    return j;
}

inline SinkedGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("adjacency") ||
        !j.contains("sink"))
        throw std::invalid_argument("graph json: need vertices, adjacency, sink");
    const auto& verts = j.at("vertices");
    const std::size_t n = verts.size();
    for (std::size_t v = 0; v < n; ++v)
        if (verts.at(v).get<long long>() != static_cast<long long>(v))
            throw std::invalid_argument("graph json: vertices must be 0..n-1 in order");
    std::vector<std::tuple<int, int, int>> edges;
    for (const auto& e : j.at("adjacency")) {
        if (e.size() != 3) throw std::invalid_argument("graph json: adjacency entry arity");
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    }
    for (const auto& s : j.at("sink")) {
        if (s.size() != 2) throw std::invalid_argument("graph json: sink entry arity");
        edges.push_back({s.at(0).get<int>(), SinkedGraph::kSink, s.at(1).get<int>()});
    }
    std::optional<std::vector<Point>> coords;
    if (j.contains("coords")) {
        coords.emplace();
        for (const auto& c : j.at("coords")) {
            if (c.size() != 2) throw std::invalid_argument("graph json: coords entry arity");
            coords->push_back({c.at(0).get<long long>(), c.at(1).get<long long>()});
        }
        if (coords->size() != n)
            throw std::invalid_argument("graph json: coords length mismatch");
    }
    SinkedGraph g = from_edge_list(n, edges);
    if (!coords) return g;
    // rebuild with coordinates attached
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    std::vector<int> sink(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        sink[u] = g.sink_edges(u);
        for (std::size_t v = 0; v < n; ++v) adj[u][v] = g.mult(u, v);
    }
    return SinkedGraph(std::move(adj), std::move(sink), std::move(coords));
}

// CircleVec wire format: array of "num/den" strings in vertex order.
inline nlohmann::json circle_vec_to_json(const CircleVec& v) {
    auto j = nlohmann::json::array();
    for (const auto& x : v) j.push_back(rat_to_string(mod1(x)));
    return j;
}

inline CircleVec circle_vec_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("circle vec json: expected array");
    CircleVec v;
    for (const auto& x : j) v.push_back(mod1(rat_from_string(x.get<std::string>())));
    return v;
}

inline nlohmann::json report_to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    auto checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json cj;
        cj["id"] = c.id;
        cj["inputs"] = c.inputs;
        cj["expected"] = c.expected;
        cj["got"] = c.got;
        cj["pass"] = c.pass;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["pass"] = r.pass();
    return j;
}

}  // namespace sandpile
