#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "percolab/degrees.hpp"
#include "percolab/graph.hpp"
#include "percolab/path.hpp"
#include "percolab/rng.hpp"

namespace percolab {

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

// One step of the breadth-first half-edge exploration. Step l (1-based) is
// either a component start (a fresh vertex activated, J = 1) or one pairing of
// an active half-edge. In both cases S(l) = S(l-1) + d_new * J - 2.
struct ExplorationStep {
    std::int64_t S = 0;
    bool J = false;              // a new vertex was discovered
    std::uint32_t d_new = 0;     // its degree when J, else 0
    bool surplus_mark = false;   // pairing closed a cycle
    bool component_start = false;
    Vertex vertex = kNoVertex;   // discovered vertex when J
};

struct ExplorationTrace {
    std::vector<ExplorationStep> steps;  // steps[l - 1] is step l
    std::vector<std::size_t> boundaries; // tau_k, first l with S(l) = -2k

    std::size_t length() const noexcept { return steps.size(); }
    std::int64_t S(std::size_t l) const { return l == 0 ? 0 : steps[l - 1].S; }
};

struct ExplorationResult {
    ExplorationTrace trace;
    MultiGraph graph;
};

// Builds a uniform configuration-model pairing while exploring it breadth-first.
// Throws std::invalid_argument when the degree total is odd.
ExplorationResult explore_cm(const DegreeSequence& d, Rng& rng);

struct TraceComponent {
    std::uint64_t size = 0;
    std::uint64_t edges = 0;
    std::uint64_t surplus = 0;
};

// Per explored component, in exploration order. Throws std::invalid_argument
// for traces whose boundaries do not delimit components.
std::vector<TraceComponent> components_from_trace(const ExplorationTrace& t);
std::vector<std::uint64_t> surplus_from_trace(const ExplorationTrace& t);

// Recomputes S from the increments and checks S(tau_k) = -2k plus S > -2k inside.
bool incremental_process_check(const ExplorationTrace& t);
// Checks S(l) = sum of degrees discovered by step l - 2l, using d for the degrees.
bool rewritten_process_check(const ExplorationTrace& t, const DegreeSequence& d);

// Grid value k is S(k) / space_scale, grid step 1 / time_scale.
LimitPath rescaled_path(const ExplorationTrace& t, double time_scale, double space_scale);

struct DriftPoint {
    double t = 0;
    std::size_t l = 0;
    double mean = 0;      // empirical mean of d_(l) - 2
    double std_error = 0;
    double predicted = 0; // n^{-1/3} (lambda - t (sigma3 - 2 sigma2) / mu^2)
};

// Monte Carlo over size-biased reorderings; lambda is read off as (nu_n - 1) n^{1/3}.
std::vector<DriftPoint> drift_estimate(const DegreeSequence& d, std::span<const double> t_grid,
                                       std::size_t replicas, Rng& rng);

// CSV with header l,S,J,d_new,surplus_mark.
void write_trace_csv(std::ostream& out, const ExplorationTrace& t);

}  // namespace percolab
