#include "percolab/limit.hpp"

#include <algorithm>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace percolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t grid_points(double T, double dt) {
    if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("path needs T > 0 and dt > 0");
    return static_cast<std::size_t>(std::floor(T / dt + 1e-9)) + 1;
}

// First grid index k with k * dt >= x.
std::size_t grid_ceil(double x, double dt) {
    const double k = std::ceil(x / dt - 1e-12);
    return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

}  // namespace

LimitPath simulate_bm_parabolic(double mu, double kappa, double lambda, double T, double dt, Rng& rng) {
    if (!(mu > 0.0) || !(kappa >= 0.0)) throw std::invalid_argument("BM needs mu > 0 and kappa >= 0");
    const std::size_t N = grid_points(T, dt);
    LimitPath p;
    p.dt = dt;
    p.values.resize(N);
    const double sd = std::sqrt(kappa * dt) / mu;
    std::normal_distribution<double> gauss(0.0, 1.0);
    double noise = 0.0;
    p.values[0] = 0.0;
    for (std::size_t k = 1; k < N; ++k) {
        if (sd > 0.0) noise += sd * gauss(rng);
        const double t = p.time(k);
        p.values[k] = noise + lambda * t - kappa * t * t / (2.0 * mu * mu * mu);
    }
    return p;
}

LimitPath reflect(const LimitPath& p) {
    LimitPath r;
    r.dt = p.dt;
    r.values.resize(p.size());
    double running_min = kInf;
    for (std::size_t k = 0; k < p.size(); ++k) {
        running_min = std::min(running_min, p.values[k]);
        r.values[k] = p.values[k] - running_min;
    }
    return r;
}

double power_tail_sum(double s, std::size_t k) {
    if (!(s > 1.0)) return kInf;
    constexpr std::size_t kDirect = 64;
    double sum = 0.0;
    std::size_t N = k;
    if (N < kDirect) {
        for (std::size_t i = kDirect; i > k; --i) sum += std::pow(static_cast<double>(i), -s);
        N = kDirect;
    }
    // Euler-Maclaurin for sum_{i > N} i^{-s}.
    const double x = static_cast<double>(N);
    sum += std::pow(x, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(x, -s) + s * std::pow(x, -s - 1.0) / 12.0 -
           s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0) / 720.0;
    return sum;
}

ThetaSequence power_law_theta(double tau, double c_f, std::size_t K) {
    if (!(tau > 2.0) || !(c_f > 0.0) || K == 0) throw std::invalid_argument("power_law_theta: bad parameters");
    const double alpha = 1.0 / (tau - 1.0);
    ThetaSequence th;
    th.values.resize(K);
    const double scale = std::pow(c_f, alpha);
    for (std::size_t i = 0; i < K; ++i) th.values[i] = scale * std::pow(static_cast<double>(i + 1), -alpha);
    if (2.0 * alpha > 1.0 && alpha <= 1.0) th.membership = ThetaClass::l2_not_l1;
    else if (3.0 * alpha > 1.0 && 2.0 * alpha <= 1.0) th.membership = ThetaClass::l3_not_l2;
    th.tail_l2 = 2.0 * alpha > 1.0 ? scale * scale * power_tail_sum(2.0 * alpha, K) : kInf;
    th.tail_l3 = 3.0 * alpha > 1.0 ? scale * scale * scale * power_tail_sum(3.0 * alpha, K) : kInf;
    th.norm_l2_sq = 2.0 * alpha > 1.0 ? scale * scale * boost::math::zeta(2.0 * alpha) : kInf;
    return th;
}

double levy34_truncation_bound(const ThetaSequence& theta, double mu, double nu, double T) {
    // Dropped terms: |mean| <= T^2 sum theta^3 / (2 mu^2 nu^1.5), variance <= T sum theta^3 / (mu nu^1.5).
    const double t3 = theta.tail_l3;
    const double nu15 = std::pow(nu, 1.5);
    return T * T * t3 / (2.0 * mu * mu * nu15) + std::sqrt(T * t3 / (mu * nu15));
}

double tau23_truncation_bound(const ThetaSequence& theta, double lambda, double T) {
    return lambda * T * theta.tail_l2 / theta.norm_l2_sq;
}

std::size_t choose_levy34_truncation(double tau, double c_f, double mu, double nu, double T, double tol,
                                     std::size_t max_k) {
    const double alpha = 1.0 / (tau - 1.0);
    const double scale3 = std::pow(c_f, 3.0 * alpha);
    for (std::size_t K = 64; K <= max_k; K *= 2) {
        ThetaSequence probe;
        probe.tail_l3 = scale3 * power_tail_sum(3.0 * alpha, K);
        if (levy34_truncation_bound(probe, mu, nu, T) < tol) return K;
    }
    throw std::runtime_error("thinned Levy truncation: tolerance needs more than max_k terms");
}

std::size_t choose_tau23_truncation(double tau, double c_f, double lambda, double T, double tol, std::size_t max_k) {
    const double alpha = 1.0 / (tau - 1.0);
    if (!(2.0 * alpha > 1.0)) throw std::invalid_argument("tau23 truncation needs theta in l2");
    const double scale2 = std::pow(c_f, 2.0 * alpha);
    ThetaSequence probe;
    probe.norm_l2_sq = scale2 * boost::math::zeta(2.0 * alpha);
    for (std::size_t K = 64; K <= max_k; K *= 2) {
        probe.tail_l2 = scale2 * power_tail_sum(2.0 * alpha, K);
        if (tau23_truncation_bound(probe, lambda, T) < tol) return K;
    }
    throw std::runtime_error("tau23 truncation: tolerance needs more than max_k terms");
}

namespace {

// Sums single jumps into the grid and adds a linear drift.
LimitPath assemble(const std::vector<double>& clocks, const std::vector<double>& jumps, double drift, double T,
                   double dt) {
    const std::size_t N = grid_points(T, dt);
    std::vector<double> inc(N, 0.0);
    for (std::size_t i = 0; i < clocks.size(); ++i) {
        const std::size_t k = grid_ceil(clocks[i], dt);
        if (k < N) inc[k] += jumps[i];
    }
    LimitPath p;
    p.dt = dt;
    p.values.resize(N);
    double acc = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        acc += inc[k];
        p.values[k] = acc + drift * p.time(k);
    }
    return p;
}

}  // namespace

JumpSimulation simulate_thinned_levy(const ThetaSequence& theta, double mu, double nu, double lambda, double T,
                                     double dt, Rng& rng, bool with_dominating) {
    if (!(mu > 0.0) || !(nu > 0.0)) throw std::invalid_argument("thinned Levy needs mu, nu > 0");
    if (theta.values.empty()) throw std::invalid_argument("thinned Levy needs K >= 1");
    const std::size_t K = theta.truncation();
    const double sq = std::sqrt(nu);
    JumpSimulation sim;
    sim.clocks.resize(K);
    sim.jump_sizes.resize(K);
    double compensator = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        const double th = theta.values[i];
        sim.clocks[i] = exponential(rng, th / (mu * sq));
        sim.jump_sizes[i] = th / sq;
        compensator += th * th / (mu * nu);
    }
    const double drift = lambda - compensator;
    sim.path = assemble(sim.clocks, sim.jump_sizes, drift, T, dt);
    sim.truncation_bound = levy34_truncation_bound(theta, mu, nu, T);
    if (with_dominating) {
        // Poisson counters N_i whose first arrival is xi_i.
        std::vector<double> times, sizes;
        for (std::size_t i = 0; i < K; ++i) {
            const double rate = theta.values[i] / (mu * sq);
            for (double t = sim.clocks[i]; t <= T; t += exponential(rng, rate)) {
                times.push_back(t);
                sizes.push_back(sim.jump_sizes[i]);
            }
        }
        sim.dominating = assemble(times, sizes, drift, T, dt);
    }
    return sim;
}

JumpSimulation simulate_tau23_process(const ThetaSequence& theta, double mu, double lambda, double T, double dt,
                                      Rng& rng) {
    if (!(mu > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("tau23 process needs lambda, mu > 0");
    if (theta.values.empty() || !std::isfinite(theta.norm_l2_sq)) {
        throw std::invalid_argument("tau23 process needs a nonempty theta in l2");
    }
    const std::size_t K = theta.truncation();
    JumpSimulation sim;
    sim.clocks.resize(K);
    sim.jump_sizes.resize(K);
    const double factor = lambda * mu / theta.norm_l2_sq;
    for (std::size_t i = 0; i < K; ++i) {
        sim.clocks[i] = exponential(rng, theta.values[i] / mu);
        sim.jump_sizes[i] = factor * theta.values[i];
    }
    sim.path = assemble(sim.clocks, sim.jump_sizes, -1.0, T, dt);
    sim.truncation_bound = tau23_truncation_bound(theta, lambda, T);
    return sim;
}

ExcursionSet excursions(const LimitPath& p, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("excursion tolerance must be >= 0");
    const LimitPath r = reflect(p);
    const std::size_t N = r.size();
    ExcursionSet set;
    std::size_t i = 0;
    while (i < N) {
        if (r.values[i] <= tol) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < N && r.values[i] > tol) ++i;
        Excursion e;
        e.first = start - 1;  // r[0] = 0, so start >= 1
        e.complete = i < N;
        e.last = e.complete ? i : N - 1;
        e.left = r.time(e.first);
        e.right = r.time(e.last);
        e.length = e.right - e.left;
        set.items.push_back(e);
    }
    std::stable_sort(set.items.begin(), set.items.end(),
                     [](const Excursion& a, const Excursion& b) { return a.length > b.length; });
    return set;
}

double default_excursion_tol(double dt, double max_drift_rate) { return 2.0 * dt * std::abs(max_drift_rate); }

MarkCounts poisson_marks(const LimitPath& reflected, double scale, Rng& rng) {
    if (!(scale >= 0.0)) throw std::invalid_argument("mark intensity scale must be >= 0");
    MarkCounts marks;
    if (reflected.size() < 2) return marks;
    marks.per_cell.assign(reflected.size() - 1, 0);
    for (std::size_t k = 0; k + 1 < reflected.size(); ++k) {
        const double a = reflected.values[k], b = reflected.values[k + 1];
        if (a < 0.0 || b < 0.0) throw std::invalid_argument("poisson_marks needs a nonnegative path");
        const double mean = scale * reflected.dt * 0.5 * (a + b);
        if (mean > 0.0) {
            std::poisson_distribution<std::uint64_t> pois(mean);
            marks.per_cell[k] = pois(rng);
            marks.total += marks.per_cell[k];
        }
    }
    return marks;
}

void assign_marks(ExcursionSet& set, const MarkCounts& marks) {
    for (auto& e : set.items) {
        e.marks = 0;
        for (std::size_t k = e.first; k < e.last && k < marks.per_cell.size(); ++k) e.marks += marks.per_cell[k];
    }
}

OrderedPairVector limit_component_vector(const ExcursionSet& set, double length_scale, bool include_incomplete) {
    std::vector<MassPair> z;
    for (const auto& e : set.items) {
        if (!e.complete && !include_incomplete) continue;
        z.push_back({length_scale * e.length, e.marks});
    }
    return ord(z);
}

BmParameters bm_parameters(const Pmf& p) {
    const double m1 = pmf_moment(p, 1), m2 = pmf_moment(p, 2), m3 = pmf_moment(p, 3);
    if (!(m1 > 0.0)) throw std::invalid_argument("bm_parameters needs a positive mean");
    if (!std::isfinite(m3)) throw std::invalid_argument("bm_parameters needs a finite third moment");
    return {m1, m3 * m1 - m2 * m2, 1.0 / m1};
}

}  // namespace percolab
