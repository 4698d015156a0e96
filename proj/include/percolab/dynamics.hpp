#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "percolab/generators.hpp"
#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace percolab {

// n^{-1} sum over components of |C|^k, with n = dec.vertex_count.
double susceptibility(const ComponentDecomposition& dec, int k);

struct SusceptibilityPoint {
    std::size_t n = 0;
    double s2 = 0, s3 = 0, s4 = 0;  // s4 is NaN unless tracked
    double s2_next = std::numeric_limits<double>::quiet_NaN();  // s2(n + 1) when n < n_max
    std::uint64_t c_max = 0;
    std::uint64_t c_one = 0;        // component of the first vertex
    double time = std::numeric_limits<double>::quiet_NaN();   // Yule time, if tracked
    double m_value = std::numeric_limits<double>::quiet_NaN();
};

struct SusceptibilityTrack {
    double pi = 0;
    std::vector<SusceptibilityPoint> points;
    std::uint64_t argmax_switches = 0;  // changes of the largest component's root between checkpoints
};

struct GrowthTrackOptions {
    bool track_s4 = false;
    bool continuous_time = false;  // Yule times and the martingale M
};

// Grows the attachment graph to n_max vertices, keeping each arriving edge with
// probability pi, and records susceptibilities at the requested vertex counts.
// Checkpoints outside [2, n_max] are ignored.
SusceptibilityTrack track_growth(const PASpec& spec, double pi, std::size_t n_max,
                                 std::span<const std::size_t> checkpoints, Rng& rng,
                                 GrowthTrackOptions options = {});

// Checkpoints 2^j rounded, plus n_max, deduplicated.
std::vector<std::size_t> log_checkpoints(std::size_t n_min, std::size_t n_max, std::size_t per_doubling = 1);

// Uniform attachment with two edges per vertex, percolated with probability pi:
// F(s) = 2 pi^2 s^2 + (4 pi - 1) s + 1.
double F(double s, double pi);

struct FixedPointReport {
    bool real_roots = false;  // false when pi > pi_c (supercritical)
    double lambda1 = 0, lambda2 = 0;
    bool lambda1_stable = false, lambda2_stable = false;
};
FixedPointReport fixed_points(double pi);
// Smaller root of F, (1 - 4 pi - sqrt(8 pi^2 - 8 pi + 1)) / (4 pi^2); 1 at pi = 0.
double s2_infinity(double pi);
// (1 - sqrt(8 pi^2 - 8 pi + 1)) / 2. Throws std::domain_error for pi > pi_c.
double alpha(double pi);

struct ComponentOfOne {
    std::vector<std::size_t> n;
    std::vector<std::uint64_t> size;
    std::vector<double> time;
    std::vector<double> m_value;
};
ComponentOfOne component_of_one(const SusceptibilityTrack& track);

struct ResidualReport {
    // Per checkpoint, averaged over tracks: (n+1)(s2(n+1) - s2(n)) - F(s2(n)).
    std::vector<std::size_t> n;
    std::vector<double> mean_residual;
    std::vector<double> std_error;
    // Exact conditional drift correction -2 pi^2 (s3 + s4) / n, averaged.
    std::vector<double> mean_correction;
    std::vector<double> s4_over_n;
    double fitted_k = 0;      // max |mean correction| / (s4/n)
    double envelope_slope = 0; // log-log slope of |mean correction| against s4/n
    double max_z = 0;         // max |mean_residual - mean_correction| / std_error
};
// Needs tracks recorded with track_s4 and identical checkpoints.
ResidualReport sa_residual_check(std::span<const SusceptibilityTrack> tracks, double pi);

}  // namespace percolab
