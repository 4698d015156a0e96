#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace percolab {

using Vertex = std::uint32_t;

// Unordered vertex pair; u == v is a self-loop. Vertices are 0-based.
struct Edge {
    Vertex u;
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Vertex count plus an edge multiset. Parallel edges and self-loops are kept
// verbatim; a self-loop contributes 2 to the degree of its vertex.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(std::size_t n) : n_(n) {}
    // Throws std::out_of_range if an endpoint is >= n.
    MultiGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::vector<std::uint32_t> degrees() const;
    // O(edge_count) per call.
    std::uint32_t degree(Vertex v) const;
    std::size_t multiplicity(Vertex u, Vertex v) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

// Same as the constructor; kept as a free function for symmetry with the generators.
MultiGraph build_graph(std::size_t n, std::vector<Edge> edges);

struct ComponentEntry {
    std::uint64_t size = 0;
    std::uint64_t surplus = 0;
    Vertex min_vertex = 0;
    friend bool operator==(const ComponentEntry&, const ComponentEntry&) = default;
};

// Components sorted by size descending, ties by smallest contained vertex.
struct ComponentDecomposition {
    std::size_t vertex_count = 0;
    std::vector<ComponentEntry> entries;

    std::uint64_t largest() const { return entries.empty() ? 0 : entries[0].size; }
    std::uint64_t second() const { return entries.size() < 2 ? 0 : entries[1].size; }
    std::uint64_t total_size() const;
};

struct ComponentOptions {
    bool exclude_isolated = false;  // vertices with no incident edge
};

ComponentDecomposition components(const MultiGraph& g, ComponentOptions options = {});

// Largest and second-largest component sizes without building the full sorted list.
struct TopComponents {
    std::uint64_t largest = 0;
    std::uint64_t second = 0;
    std::uint64_t largest_surplus = 0;
};
TopComponents top_components(const MultiGraph& g, ComponentOptions options = {});

// ---------------------------------------------------------------------------
// Ordered vectors in l2 (nonincreasing) and the size/surplus space U0.

struct MassPair {
    double x = 0.0;
    std::uint64_t y = 0;
    friend bool operator==(const MassPair&, const MassPair&) = default;
};

class OrderedPairVector {
public:
    OrderedPairVector() = default;
    std::span<const MassPair> pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    const MassPair& operator[](std::size_t i) const { return pairs_[i]; }
    friend bool operator==(const OrderedPairVector&, const OrderedPairVector&) = default;

private:
    friend OrderedPairVector ord(std::span<const MassPair> z);
    std::vector<MassPair> pairs_;
};

// Sorts by x descending, ties by y descending; drops (0,0) padding.
// Throws std::invalid_argument for negative x or a pair (0, y>0).
OrderedPairVector ord(std::span<const MassPair> z);

double l2_distance(std::span<const double> x, std::span<const double> y);
double u0_distance(const OrderedPairVector& a, const OrderedPairVector& b);

// (size / scale, surplus) for every component, ordered.
OrderedPairVector to_pair_vector(const ComponentDecomposition& dec, double scale);

}  // namespace percolab
