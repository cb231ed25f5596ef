#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sandpile/int_matrix.hpp"

namespace sandpile {

using Point = std::pair<long long, long long>;

// Finite connected loop-free multigraph with a distinguished sink. Only the
// non-sink vertices are materialized; edges to the sink are kept as
// per-vertex counts. Immutable after construction.
class SinkedGraph {
public:
    static constexpr int kSink = -1;  // sentinel vertex id in edge lists

    // adjacency: symmetric multiplicity matrix over non-sink vertices,
    // zero diagonal. sink_edges: s(v) >= 0, at least one positive.
    SinkedGraph(std::vector<std::vector<int>> adjacency, std::vector<int> sink_edges,
                std::optional<std::vector<Point>> coords = std::nullopt)
        : adj_(std::move(adjacency)), sink_(std::move(sink_edges)), coords_(std::move(coords)) {
        const std::size_t n = adj_.size();
        if (sink_.size() != n)
            throw std::invalid_argument("SinkedGraph: sink edge list length mismatch");
        if (coords_ && coords_->size() != n)
            throw std::invalid_argument("SinkedGraph: coordinate list length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (adj_[i].size() != n)
                throw std::invalid_argument("SinkedGraph: adjacency matrix is not square");
            if (adj_[i][i] != 0)
                throw std::invalid_argument("SinkedGraph: self-loop at vertex " + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) {
                if (adj_[i][j] < 0)
                    throw std::invalid_argument("SinkedGraph: negative multiplicity");
                if (adj_[i][j] != adj_[j][i])
                    throw std::invalid_argument("SinkedGraph: adjacency not symmetric");
            }
            if (sink_[i] < 0) throw std::invalid_argument("SinkedGraph: negative sink multiplicity");
        }
        bool has_sink_edge = false;
        for (int s : sink_) has_sink_edge |= (s > 0);
        if (n > 0 && !has_sink_edge)
            throw std::invalid_argument("SinkedGraph: no vertex is wired to the sink");
        if (!connected_with_sink())
            throw std::invalid_argument("SinkedGraph: graph (with sink) is not connected");
        deg_.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            long long d = sink_[v];
            for (std::size_t w = 0; w < n; ++w) d += adj_[v][w];
            deg_[v] = d;
        }
    }

    std::size_t size() const { return adj_.size(); }
    int mult(std::size_t u, std::size_t v) const { return adj_[u][v]; }
    int sink_edges(std::size_t v) const { return sink_[v]; }
    long long degree(std::size_t v) const { return deg_[v]; }

    bool is_boundary(std::size_t v) const { return sink_[v] > 0; }

    std::vector<std::size_t> boundary() const {
        std::vector<std::size_t> b;
        for (std::size_t v = 0; v < size(); ++v)
            if (is_boundary(v)) b.push_back(v);
        return b;
    }

    std::vector<std::size_t> interior() const {
        std::vector<std::size_t> b;
        for (std::size_t v = 0; v < size(); ++v)
            if (!is_boundary(v)) b.push_back(v);
        return b;
    }

    bool has_coords() const { return coords_.has_value(); }
    const std::vector<Point>& coords() const {
        if (!coords_) throw std::logic_error("SinkedGraph: no coordinates attached");
        return *coords_;
    }

    std::optional<std::size_t> vertex_at(const Point& p) const {
        if (!coords_) return std::nullopt;
        for (std::size_t v = 0; v < coords_->size(); ++v)
            if ((*coords_)[v] == p) return v;
        return std::nullopt;
    }

    bool operator==(const SinkedGraph& o) const {
        return adj_ == o.adj_ && sink_ == o.sink_;
    }
    bool operator!=(const SinkedGraph& o) const { return !(*this == o); }

private:
    bool connected_with_sink() const {
        const std::size_t n = adj_.size();
        if (n == 0) return true;
        std::vector<char> seen(n + 1, 0);  // index n = sink
        std::queue<std::size_t> q;
        q.push(n);
        seen[n] = 1;
        std::size_t count = 1;
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            for (std::size_t w = 0; w < n; ++w) {
                bool linked = (v == n) ? sink_[w] > 0 : adj_[v][w] > 0;
                if (linked && !seen[w]) {
                    seen[w] = 1;
                    ++count;
                    q.push(w);
                }
            }
        }
        return count == n + 1;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<int> sink_;
    std::optional<std::vector<Point>> coords_;
    std::vector<long long> deg_;
};

// Reduced Laplacian: diagonal -deg(v), off-diagonal edge multiplicities.
// Toppling at v is f -> f + L e_v: removes deg(v) grains at v, pushes one
// along every edge. Row sums equal -s(v).
inline IntMatrix reduced_laplacian(const SinkedGraph& g) {
    const std::size_t n = g.size();
    IntMatrix L(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w) L.at(v, w) = g.mult(v, w);
        L.at(v, v) = -Int(g.degree(v));
    }
    return L;
}

// Rows of the reduced Laplacian restricted to interior vertices
// (|interior| x |vertices|); a 0-row matrix when the interior is empty.
inline IntMatrix interior_laplacian(const SinkedGraph& g) {
    return reduced_laplacian(g).select_rows(g.interior());
}

// Lattice helpers ------------------------------------------------------------

namespace detail {

inline long long cross(const Point& o, const Point& a, const Point& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

// Convex hull, counterclockwise, no duplicate endpoints. Collinear input
// degenerates to a 2-point segment (or a single point).
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Point> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.first, b.first) <= p.first && p.first <= std::max(a.first, b.first) &&
           std::min(a.second, b.second) <= p.second && p.second <= std::max(a.second, b.second);
}

inline bool in_hull(const std::vector<Point>& hull, const Point& p) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return hull[0] == p;
    if (hull.size() == 2) return on_segment(hull[0], hull[1], p);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < 0) return false;
    }
    return true;
}

}  // namespace detail

// A finite S in Z^2 is convex when it equals the lattice points of its own
// real convex hull.
inline bool is_convex_lattice_set(const std::vector<Point>& points) {
    if (points.empty()) return true;
    std::set<Point> s(points.begin(), points.end());
    auto hull = detail::convex_hull(points);
    long long xmin = points[0].first, xmax = xmin, ymin = points[0].second, ymax = ymin;
    for (const auto& p : s) {
        xmin = std::min(xmin, p.first);
        xmax = std::max(xmax, p.first);
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
    }
    for (long long x = xmin; x <= xmax; ++x)
        for (long long y = ymin; y <= ymax; ++y)
            if (detail::in_hull(hull, {x, y}) && !s.count({x, y})) return false;
    return true;
}

// Portion of the square lattice inside an arbitrary finite 4-connected set;
// missing neighbors become sink edges, so every vertex has degree 4.
// Vertices are ordered row-major (y outer, x inner).
inline SinkedGraph lattice_domain(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("lattice_domain: empty point set");
    std::set<Point> s(points.begin(), points.end());
    std::vector<Point> verts(s.begin(), s.end());
    std::sort(verts.begin(), verts.end(),
              [](const Point& a, const Point& b) {
                  return std::tie(a.second, a.first) < std::tie(b.second, b.first);
              });
    std::map<Point, std::size_t> index;
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = i;

    // 4-connectivity
    std::vector<char> seen(verts.size(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    const Point steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (!q.empty()) {
        Point p = verts[q.front()];
        q.pop();
        for (const auto& d : steps) {
            auto it = index.find({p.first + d.first, p.second + d.second});
            if (it != index.end() && !seen[it->second]) {
                seen[it->second] = 1;
                ++reached;
                q.push(it->second);
            }
        }
    }
    if (reached != verts.size())
        throw std::invalid_argument("lattice_domain: point set is not 4-connected");

    const std::size_t n = verts.size();
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    std::vector<int> sink(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        int nbrs = 0;
        for (const auto& d : steps) {
            auto it = index.find({verts[v].first + d.first, verts[v].second + d.second});
            if (it != index.end()) {
                adj[v][it->second] = 1;
                ++nbrs;
            }
        }
        sink[v] = 4 - nbrs;
    }
    return SinkedGraph(std::move(adj), std::move(sink), std::move(verts));
}

// Lattice points of the open rectangle (0,p) x (0,q).
inline SinkedGraph rectangle_graph(long long p, long long q) {
    if (p < 2 || q < 2)
        throw std::invalid_argument("rectangle_graph: sides must be at least 2");
    std::vector<Point> pts;
    for (long long y = 1; y < q; ++y)
        for (long long x = 1; x < p; ++x) pts.push_back({x, y});
    return lattice_domain(pts);
}

// Interior of the integer interval (0,n): a path of n-1 vertices, the two
// ends each wired to the sink once.
inline SinkedGraph path_graph(long long n) {
    if (n < 2) throw std::invalid_argument("path_graph: n must be at least 2");
    const std::size_t k = static_cast<std::size_t>(n - 1);
    std::vector<std::vector<int>> adj(k, std::vector<int>(k, 0));
    std::vector<int> sink(k, 0);
    for (std::size_t i = 0; i + 1 < k; ++i) adj[i][i + 1] = adj[i + 1][i] = 1;
    sink[0] += 1;
    sink[k - 1] += 1;
    return SinkedGraph(std::move(adj), std::move(sink));
}

// edges: (u, v, multiplicity) with v == SinkedGraph::kSink for sink edges.
inline SinkedGraph from_edge_list(std::size_t n,
                                  const std::vector<std::tuple<int, int, int>>& edges) {
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    std::vector<int> sink(n, 0);
    for (const auto& [u, v, m] : edges) {
        if (m <= 0) throw std::invalid_argument("from_edge_list: non-positive multiplicity");
        if (u == v) throw std::invalid_argument("from_edge_list: self-loop");
        auto check = [&](int x) {
            if (x != SinkedGraph::kSink && (x < 0 || static_cast<std::size_t>(x) >= n))
                throw std::invalid_argument("from_edge_list: vertex id out of range");
        };
        check(u);
        check(v);
        if (u == SinkedGraph::kSink || v == SinkedGraph::kSink) {
            int w = (u == SinkedGraph::kSink) ? v : u;
            if (w == SinkedGraph::kSink)
                throw std::invalid_argument("from_edge_list: self-loop at sink");
            sink[w] += m;
        } else {
            adj[u][v] += m;
            adj[v][u] += m;
        }
    }
    return SinkedGraph(std::move(adj), std::move(sink));
}

// Subgraph embedding in which the ambient Laplacian restricts to the
// sub-Laplacian: adjacency is preserved and ambient neighbors outside the
// image are absorbed into the sub's sink edges.
struct Embedding {
    const SinkedGraph* source;
    const SinkedGraph* target;
    std::vector<std::size_t> vertex_map;  // source index -> target index
};

inline Embedding embed(const SinkedGraph& sub, const SinkedGraph& super,
                       std::vector<std::size_t> vertex_map) {
    if (vertex_map.size() != sub.size())
        throw std::invalid_argument("embed: vertex map length mismatch");
    std::set<std::size_t> image;
    for (std::size_t t : vertex_map) {
        if (t >= super.size()) throw std::invalid_argument("embed: target index out of range");
        if (!image.insert(t).second) throw std::invalid_argument("embed: vertex map not injective");
    }
    for (std::size_t u = 0; u < sub.size(); ++u) {
        if (sub.degree(u) != super.degree(vertex_map[u]))
            throw std::invalid_argument("embed: degree not preserved at vertex " +
                                        std::to_string(u));
        for (std::size_t v = 0; v < sub.size(); ++v)
            if (u != v && sub.mult(u, v) != super.mult(vertex_map[u], vertex_map[v]))
                throw std::invalid_argument("embed: adjacency not preserved between " +
                                            std::to_string(u) + " and " + std::to_string(v));
    }
    return Embedding{&sub, &super, std::move(vertex_map)};
}

// Embedding of one coordinate-carrying graph into another by matching
// points translated by `offset`.
inline Embedding embed_by_coords(const SinkedGraph& sub, const SinkedGraph& super,
                                 Point offset = {0, 0}) {
    std::vector<std::size_t> vm(sub.size());
    for (std::size_t v = 0; v < sub.size(); ++v) {
        Point p = sub.coords()[v];
        auto t = super.vertex_at({p.first + offset.first, p.second + offset.second});
        if (!t)
            throw std::invalid_argument("embed_by_coords: point not present in target graph");
        vm[v] = *t;
    }
    return embed(sub, super, std::move(vm));
}

}  // namespace sandpile
