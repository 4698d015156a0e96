#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "percolab/degrees.hpp"
#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace percolab {

// Uniform perfect matching of the half-edges (Fisher-Yates, then consecutive pairs).
// Throws std::invalid_argument on an odd total.
MultiGraph configuration_model(const DegreeSequence& d, Rng& rng);
// Same, but zero entries are allowed (used by the explosion construction).
MultiGraph pair_half_edges(std::span<const std::uint32_t> d, Rng& rng);

// Rank-1 inhomogeneous random graphs. x = w_u w_v / l_n.
enum class Rank1Kind {
    norros_reittu,  // p = 1 - exp(-x)
    chung_lu,       // p = min(x, 1)
    generalized,    // p = x / (1 + x)
};

double rank1_edge_probability(Rank1Kind kind, double x);

MultiGraph rank1_graph(const WeightSequence& w, Rank1Kind kind, Rng& rng);
MultiGraph nr_graph(const WeightSequence& w, Rng& rng);
MultiGraph chung_lu(const WeightSequence& w, Rng& rng);
MultiGraph grg(const WeightSequence& w, Rng& rng);
// Poisson(w_u w_v / l_n) parallel edges for each u < v, no self-loops.
MultiGraph nr_multigraph(const WeightSequence& w, Rng& rng);

// Initial graph on two vertices: `between` parallel edges plus self-loops.
struct InitialGraph {
    std::uint32_t between = 0;
    std::uint32_t loops_first = 0;
    std::uint32_t loops_second = 0;

    std::uint32_t degree_first() const { return between + 2 * loops_first; }
    std::uint32_t degree_second() const { return between + 2 * loops_second; }
};

// Attachment function f(x) = a x + delta; each new vertex sends m edges.
struct PASpec {
    std::uint32_t m = 1;
    double delta = 0.0;
    double a = 1.0;
    std::optional<InitialGraph> init;  // defaults to m parallel edges

    InitialGraph initial_graph() const { return init.value_or(InitialGraph{m, 0, 0}); }
    // Throws std::invalid_argument when some step could have a nonpositive normalizer
    // or a negative attachment weight.
    void validate() const;
};

// Normalizer for edge j (1-based) of vertex v (1-based, v >= 3):
// a * (d1 + d2) + 2 delta + (2 a m + delta)(v - 3) + a (j - 1).
double pa_normalizer(const PASpec& spec, std::size_t v, std::uint32_t j);

struct GrowthTrace {
    std::uint32_t m = 0;
    // targets[(v - 2) * m + j] is the target of edge j of (0-based) vertex v >= 2.
    std::vector<Vertex> targets;
    std::vector<double> arrival_times;  // optional; empty unless requested

    std::size_t arrivals() const { return m == 0 ? 0 : targets.size() / m; }
    Vertex target(Vertex v, std::uint32_t j) const { return targets[(v - 2) * std::size_t{m} + j]; }
};

struct GrowthResult {
    MultiGraph graph;
    GrowthTrace trace;
};

// Streaming attachment model: vertex v picks each of its m targets among 0..v-1
// with probability proportional to a * d_u + delta, degrees updated after every edge.
// The new vertex's own edge ends are only added once all m edges are placed.
class AttachmentProcess {
public:
    explicit AttachmentProcess(PASpec spec);

    const PASpec& spec() const noexcept { return spec_; }
    std::size_t vertex_count() const noexcept { return degree_.size(); }
    std::span<const Edge> initial_edges() const noexcept { return initial_edges_; }
    std::uint32_t degree(Vertex v) const { return degree_[v]; }
    // Adds one vertex and returns its m targets (valid until the next call).
    std::span<const Vertex> add_vertex(Rng& rng);
    void reserve(std::size_t n);

private:
    Vertex pick_target(Rng& rng);

    PASpec spec_;
    std::vector<Edge> initial_edges_;
    std::vector<std::uint32_t> degree_;
    std::vector<Vertex> ends_;  // one entry per edge end, for degree-proportional picks
    std::vector<Vertex> current_;
    std::uint64_t degree_sum_ = 0;
};

GrowthResult preferential_attachment(std::size_t n, const PASpec& spec, Rng& rng);
// a = 0 with delta = 1: each edge picks a uniform earlier vertex.
GrowthResult uniform_attachment(std::size_t n, std::uint32_t m, Rng& rng);

// Arrival times t_1 = 0 < t_2 < ... < t_n of a rate-k pure-birth process.
std::vector<double> yule_arrival_times(std::size_t n, Rng& rng);

}  // namespace percolab
