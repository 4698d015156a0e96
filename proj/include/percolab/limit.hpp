#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "percolab/degrees.hpp"
#include "percolab/graph.hpp"
#include "percolab/path.hpp"
#include "percolab/rng.hpp"

namespace percolab {

// --- Brownian motion with parabolic drift -----------------------------------

// S(t) = (sqrt(kappa)/mu) B(t) + lambda t - kappa t^2 / (2 mu^3), sampled on [0, T].
LimitPath simulate_bm_parabolic(double mu, double kappa, double lambda, double T, double dt, Rng& rng);

// p(t) - min_{s <= t} p(s).
LimitPath reflect(const LimitPath& p);

// --- Jump processes ----------------------------------------------------------

enum class ThetaClass { l3_not_l2, l2_not_l1, other };

struct ThetaSequence {
    std::vector<double> values;  // theta_1 >= theta_2 >= ... >= theta_K > 0
    ThetaClass membership = ThetaClass::other;
    double tail_l2 = 0.0;        // sum_{i > K} theta_i^2 (infinite when not in l2)
    double tail_l3 = 0.0;        // sum_{i > K} theta_i^3
    double norm_l2_sq = 0.0;     // full sum theta_i^2 including the tail (infinite when not in l2)

    std::size_t truncation() const noexcept { return values.size(); }
};

// sum_{i > k} i^{-s} for s > 1.
double power_tail_sum(double s, std::size_t k);

// theta_i = c_F^alpha i^{-alpha}, alpha = 1/(tau-1), i = 1..K.
ThetaSequence power_law_theta(double tau, double c_f, std::size_t K);

// Error bound for truncating the thinned Levy sum at K on [0, T] (mean plus one
// standard deviation of the dropped terms).
double levy34_truncation_bound(const ThetaSequence& theta, double mu, double nu, double T);
double tau23_truncation_bound(const ThetaSequence& theta, double lambda, double T);

// Smallest K (doubling from 64) whose truncation bound is below tol. Throws
// std::runtime_error when K would exceed max_k.
std::size_t choose_levy34_truncation(double tau, double c_f, double mu, double nu, double T, double tol,
                                     std::size_t max_k = std::size_t{1} << 26);
std::size_t choose_tau23_truncation(double tau, double c_f, double lambda, double T, double tol,
                                    std::size_t max_k = std::size_t{1} << 26);

struct JumpSimulation {
    LimitPath path;
    std::vector<double> clocks;      // xi_i for i < K (may exceed T)
    std::vector<double> jump_sizes;  // size of the single jump of i
    double truncation_bound = 0.0;
    LimitPath dominating;            // Levy path from the same clocks (levy34 only, optional)
};

// S(t) = sum_{i<=K} (theta_i/sqrt nu)(1{xi_i <= t} - theta_i t/(mu sqrt nu)) + lambda t,
// xi_i ~ Exp(theta_i / (mu sqrt nu)). Exact at grid points.
JumpSimulation simulate_thinned_levy(const ThetaSequence& theta, double mu, double nu, double lambda,
                                     double T, double dt, Rng& rng, bool with_dominating = false);

// S(t) = (lambda mu / |theta|^2) sum_i theta_i 1{xi_i <= t} - t, xi_i ~ Exp(theta_i / mu).
// Uses theta.norm_l2_sq for |theta|^2.
JumpSimulation simulate_tau23_process(const ThetaSequence& theta, double mu, double lambda, double T,
                                      double dt, Rng& rng);

// --- Excursions and marks ----------------------------------------------------

struct Excursion {
    std::size_t first = 0;  // grid index of the left endpoint
    std::size_t last = 0;   // grid index of the right endpoint
    double left = 0.0;
    double right = 0.0;
    double length = 0.0;
    std::uint64_t marks = 0;
    bool complete = true;   // false when the path ends inside the excursion
};

struct ExcursionSet {
    std::vector<Excursion> items;  // by length descending, ties by left endpoint
};

// Excursions of the reflected path above tol: maximal runs of grid points with
// reflected value > tol, delimited by the neighbouring points at or below tol.
ExcursionSet excursions(const LimitPath& p, double tol);
double default_excursion_tol(double dt, double max_drift_rate);

struct MarkCounts {
    std::vector<std::uint64_t> per_cell;  // cell k covers [t_k, t_{k+1}]
    std::uint64_t total = 0;
};

// Poisson marks with intensity scale * reflected(t), using the exact integral of
// the piecewise-linear interpolation on each cell.
MarkCounts poisson_marks(const LimitPath& reflected, double scale, Rng& rng);
void assign_marks(ExcursionSet& set, const MarkCounts& marks);

// ord((length_scale * |gamma_j|, N(gamma_j))) over complete excursions.
OrderedPairVector limit_component_vector(const ExcursionSet& set, double length_scale = 1.0,
                                         bool include_incomplete = false);

struct BmParameters {
    double mu = 0, kappa = 0, beta = 0;
};
// mu = E[D], kappa = E[D^3] E[D] - E[D^2]^2, beta = 1/mu.
BmParameters bm_parameters(const Pmf& p);

// --- Single-edge tiny giant ----------------------------------------------------

// A = int_0^inf (1 - e^{-z}) z^{-(tau-1)} dz for tau in (2,3).
double a_alpha(double tau);
// (c_F^{-(tau-1)}/2) sqrt((3 - tau) mu^{tau-1} / A).
double lambda_c(double tau, double c_f, double mu);

struct TinyGiantParams {
    double lambda = 1.0;
    double tau = 2.5;
    double c_f = 1.0;
    double mu = 3.0;
};

// lambda^2 int_0^inf Theta_u(x) Theta_v(x) dx with Theta_v(x) = 1 - exp(-c_F theta_v x^{-alpha})
// and theta_v = c_F v^{-alpha} / mu (v 1-based).
double lambda_uv(const TinyGiantParams& p, std::size_t u, std::size_t v);
// Same integral by a midpoint rule with the given number of panels on each half.
double lambda_uv_midpoint(const TinyGiantParams& p, std::size_t u, std::size_t v, std::size_t panels);

// Poisson(lambda_uv) edges between every pair u < v of [V].
MultiGraph tiny_giant_graph(const TinyGiantParams& p, std::size_t V, Rng& rng);

struct RhoSolution {
    std::vector<double> u;    // log-spaced grid on [u_min, a]
    std::vector<double> rho;  // rho(u) on the grid
    double zeta = 0.0;        // lambda int_0^a c_F u^{-alpha} rho(u) du
    std::size_t iterations = 0;
};

// Maximal solution of rho(u) = 1 - exp(-lambda int_0^a kappa(u,v) rho(v) dv),
// kappa(u,v) = 1 - exp(-c_F^2 (uv)^{-alpha} / mu), by monotone iteration from rho = 1.
RhoSolution rho_fixed_point(double a, const TinyGiantParams& p, std::size_t grid_size = 512,
                            double tol = 1e-10, std::size_t max_iter = 100000);
double zeta(double a, const TinyGiantParams& p, std::size_t grid_size = 512, double tol = 1e-10);

struct ZetaLimit {
    double zeta = 0.0;
    double a = 0.0;   // last truncation used
    bool converged = false;
};
// Evaluates zeta on a = 1, 4, 16, ..., extrapolating the a^{1 - 2 alpha} tail, until
// successive extrapolated values agree to relative tol.
ZetaLimit zeta_limit(const TinyGiantParams& p, double tol = 1e-4, double a_max = 1e8,
                     std::size_t grid_size = 512);

}  // namespace percolab
