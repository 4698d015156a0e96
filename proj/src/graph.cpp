#include "percolab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "percolab/union_find.hpp"

namespace percolab {

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_) {
            throw std::out_of_range("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                    ") outside vertex range of size " + std::to_string(n_));
        }
    }
}

std::vector<std::uint32_t> MultiGraph::degrees() const {
    std::vector<std::uint32_t> d(n_, 0);
    for (const auto& e : edges_) {
        ++d[e.u];
        ++d[e.v];
    }
    return d;
}

std::uint32_t MultiGraph::degree(Vertex v) const {
    std::uint32_t d = 0;
    for (const auto& e : edges_) d += (e.u == v) + (e.v == v);
    return d;
}

std::size_t MultiGraph::multiplicity(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
        return (e.u == u && e.v == v) || (e.u == v && e.v == u);
    }));
}

MultiGraph build_graph(std::size_t n, std::vector<Edge> edges) { return MultiGraph(n, std::move(edges)); }

std::uint64_t ComponentDecomposition::total_size() const {
    std::uint64_t s = 0;
    for (const auto& c : entries) s += c.size;
    return s;
}

namespace {

struct RootTally {
    UnionFind uf;
    std::vector<std::uint64_t> edges;
    std::vector<std::uint8_t> touched;
};

RootTally tally(const MultiGraph& g) {
    const std::size_t n = g.vertex_count();
    RootTally t{UnionFind(n), std::vector<std::uint64_t>(n, 0), std::vector<std::uint8_t>(n, 0)};
    for (const auto& e : g.edges()) {
        t.uf.unite(e.u, e.v);
        t.touched[e.u] = 1;
        t.touched[e.v] = 1;
    }
    for (const auto& e : g.edges()) ++t.edges[t.uf.find(e.u)];
    return t;
}

}  // namespace

ComponentDecomposition components(const MultiGraph& g, ComponentOptions options) {
    const std::size_t n = g.vertex_count();
    RootTally t = tally(g);
    ComponentDecomposition dec;
    dec.vertex_count = n;
    // Scanning vertices in increasing order, the first one seen in a component is its minimum.
    std::vector<std::uint32_t> slot(n, UINT32_MAX);
    for (Vertex v = 0; v < n; ++v) {
        if (options.exclude_isolated && !t.touched[v]) continue;
        const Vertex r = t.uf.find(v);
        if (slot[r] == UINT32_MAX) {
            slot[r] = static_cast<std::uint32_t>(dec.entries.size());
            const std::uint64_t size = t.uf.size_of_root(r);
            dec.entries.push_back({size, t.edges[r] + 1 - size, v});
        }
    }
    std::stable_sort(dec.entries.begin(), dec.entries.end(),
                     [](const ComponentEntry& a, const ComponentEntry& b) { return a.size > b.size; });
    return dec;
}

TopComponents top_components(const MultiGraph& g, ComponentOptions options) {
    const std::size_t n = g.vertex_count();
    RootTally t = tally(g);
    TopComponents top;
    Vertex best_root = UINT32_MAX;
    // Visit components in order of their smallest vertex so ties resolve as in components().
    std::vector<std::uint8_t> seen(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (options.exclude_isolated && !t.touched[v]) continue;
        const Vertex r = t.uf.find(v);
        if (seen[r]) continue;
        seen[r] = 1;
        const std::uint64_t size = t.uf.size_of_root(r);
        if (size > top.largest) {
            top.second = top.largest;
            top.largest = size;
            best_root = r;
        } else if (size > top.second) {
            top.second = size;
        }
    }
    if (best_root != UINT32_MAX) top.largest_surplus = t.edges[best_root] + 1 - top.largest;
    return top;
}

OrderedPairVector ord(std::span<const MassPair> z) {
    OrderedPairVector out;
    out.pairs_.reserve(z.size());
    for (const auto& p : z) {
        if (!(p.x >= 0.0)) throw std::invalid_argument("ord: negative or NaN mass");
        if (p.x == 0.0) {
            if (p.y != 0) throw std::invalid_argument("ord: nonzero surplus attached to zero mass");
            continue;
        }
        out.pairs_.push_back(p);
    }
    std::sort(out.pairs_.begin(), out.pairs_.end(), [](const MassPair& a, const MassPair& b) {
        return a.x != b.x ? a.x > b.x : a.y > b.y;
    });
    return out;
}

double l2_distance(std::span<const double> x, std::span<const double> y) {
    const std::size_t len = std::max(x.size(), y.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double a = i < x.size() ? x[i] : 0.0;
        const double b = i < y.size() ? y[i] : 0.0;
        sum += (a - b) * (a - b);
    }
    return std::sqrt(sum);
}

double u0_distance(const OrderedPairVector& a, const OrderedPairVector& b) {
    const std::size_t len = std::max(a.size(), b.size());
    double sq = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const MassPair p = i < a.size() ? a[i] : MassPair{};
        const MassPair q = i < b.size() ? b[i] : MassPair{};
        sq += (p.x - q.x) * (p.x - q.x);
        l1 += std::abs(p.x * static_cast<double>(p.y) - q.x * static_cast<double>(q.y));
    }
    return std::sqrt(sq) + l1;
}

OrderedPairVector to_pair_vector(const ComponentDecomposition& dec, double scale) {
    std::vector<MassPair> z;
    z.reserve(dec.entries.size());
    for (const auto& c : dec.entries) z.push_back({static_cast<double>(c.size) / scale, c.surplus});
    return ord(z);
}

}  // namespace percolab
