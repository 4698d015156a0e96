#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "percolab/degrees.hpp"
#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace percolab {

// Keeps each edge copy (parallel copies and self-loops included) independently
// with probability pi. Throws std::invalid_argument if pi is outside [0,1].
MultiGraph percolate(const MultiGraph& g, double pi, Rng& rng);
// Deterministic variant: edge i survives iff uniforms[i] < pi. Two calls with
// the same uniforms and pi <= pi' give nested edge sets.
MultiGraph percolate_with(const MultiGraph& g, double pi, std::span<const double> uniforms);

enum class Window { fixed, finite_third, heavy, tau23, single_edge };

Window parse_window(const std::string& name);  // fixed|fin3|heavy|tau23|single
std::string window_name(Window w);

// Window formulas. Results outside [0,1] are clamped with a warning.
double pi_window_finite_third(const DegreeSequence& d, double lambda);
double pi_window_heavy(const DegreeSequence& d, double lambda, double tau);
double pi_window_tau23(const DegreeSequence& d, double lambda);
double pi_window_single_edge(std::size_t n, double tau, double lambda);

struct ScalingConstants {
    double alpha, rho, eta;  // 1/(tau-1), (tau-2)/(tau-1), (tau-3)/(tau-1)
    double a_n, b_n, c_n;    // n^alpha, n^rho, n^eta
};
ScalingConstants scaling_constants(std::size_t n, double tau);  // tau in (2,4)

struct PercolationParams {
    Window window = Window::fixed;
    double pi = 1.0;      // used when window == fixed
    double lambda = 0.0;
    double tau = 0.0;     // heavy and single_edge windows

    // Resolves pi for the given degrees (size n for single_edge).
    double resolve(const DegreeSequence& d) const;
    double resolve(std::size_t n, double nu) const;
};

// Janson's explosion: vertex v keeps Bin(d_v, sqrt(pi)) half-edges, every removed
// half-edge becomes a red degree-1 vertex with index >= n.
struct ExplodedDegrees {
    std::size_t n = 0;
    std::vector<std::uint32_t> degrees;  // size n + red_count
    std::uint64_t red_count = 0;

    bool is_red(std::size_t v) const { return v >= n; }
};

ExplodedDegrees janson_explode(const DegreeSequence& d, double pi, Rng& rng);
// Pairs the exploded degrees and removes the red vertices with their edges.
MultiGraph janson_percolate(const DegreeSequence& d, double pi, Rng& rng);

// Survival probability of the unimodular branching process (root offspring D,
// later offspring D*-1) with each edge kept with probability pi.
double theta_survival(const Pmf& p, double pi, double tol = 1e-12, int max_iter = 10'000'000);

double cm_pi_c(const DegreeSequence& d);
// Closed form for delta > 0, zero for delta in (-m, 0]. Throws if delta <= -m.
double pa_pi_c(std::uint32_t m, double delta);
// Uniform attachment threshold: 1 / (2 (m + sqrt(m (m - 1)))), (2 - sqrt 2)/4 for m = 2.
double ua_pi_c(std::uint32_t m = 2);

enum class Regime { barely_subcritical, critical_window, barely_supercritical, indeterminate };
std::string regime_name(Regime r);

struct RegimeThresholds {
    double low = 0.1;          // ratios below count as "near 0"
    double high = 0.9;         // ratios above count as "near 1"
    double mass_window = 0.2;  // mass in [low, high] needed for the window label
    double spread = 0.1;       // standard deviation needed for the window label
};

struct RegimeReport {
    Regime regime = Regime::indeterminate;
    std::vector<double> ratios;  // |C_sec| / |C_max| per sample
    double mean = 0, median = 0, stddev = 0;
    double fraction_low = 0, fraction_mid = 0, fraction_high = 0;
};

struct ComponentPairSample {
    std::uint64_t largest = 0;
    std::uint64_t second = 0;
};

// Throws std::invalid_argument for fewer than 2 samples.
RegimeReport regime_diagnostic(std::span<const ComponentPairSample> samples,
                               const RegimeThresholds& thresholds = {});

}  // namespace percolab
