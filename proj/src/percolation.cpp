#include "percolab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "percolab/generators.hpp"
#include "percolab/log.hpp"

namespace percolab {

namespace {

void check_probability(double pi) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("retention probability must lie in [0, 1]");
}

double clamp_probability(double pi, const char* what) {
    if (pi >= 0.0 && pi <= 1.0) return pi;
    std::ostringstream msg;
    msg << what << " gave pi = " << pi << "; clamped to [0, 1]";
    warn(msg.str());
    return std::clamp(pi, 0.0, 1.0);
}

double require_nu(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("window formula needs nu_n > 0");
    return nu;
}

}  // namespace

MultiGraph percolate(const MultiGraph& g, double pi, Rng& rng) {
    check_probability(pi);
    std::vector<Edge> kept;
    kept.reserve(static_cast<std::size_t>(static_cast<double>(g.edge_count()) * pi * 1.05) + 8);
    for (const auto& e : g.edges()) {
        if (uniform01(rng) < pi) kept.push_back(e);
    }
    return MultiGraph(g.vertex_count(), std::move(kept));
}

MultiGraph percolate_with(const MultiGraph& g, double pi, std::span<const double> uniforms) {
    check_probability(pi);
    if (uniforms.size() < g.edge_count()) throw std::invalid_argument("need one uniform per edge");
    std::vector<Edge> kept;
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (uniforms[i] < pi) kept.push_back(edges[i]);
    }
    return MultiGraph(g.vertex_count(), std::move(kept));
}

Window parse_window(const std::string& name) {
    if (name == "fixed") return Window::fixed;
    if (name == "fin3") return Window::finite_third;
    if (name == "heavy") return Window::heavy;
    if (name == "tau23") return Window::tau23;
    if (name == "single") return Window::single_edge;
    throw std::invalid_argument("unknown window '" + name + "' (fixed|fin3|heavy|tau23|single)");
}

std::string window_name(Window w) {
    switch (w) {
        case Window::fixed: return "fixed";
        case Window::finite_third: return "fin3";
        case Window::heavy: return "heavy";
        case Window::tau23: return "tau23";
        case Window::single_edge: return "single";
    }
    return "?";
}

double pi_window_finite_third(const DegreeSequence& d, double lambda) {
    const double nu = require_nu(d.nu());
    const double n = static_cast<double>(d.size());
    return clamp_probability((1.0 + lambda * std::pow(n, -1.0 / 3.0)) / nu, "finite-third window");
}

double pi_window_heavy(const DegreeSequence& d, double lambda, double tau) {
    if (!(tau > 3.0 && tau < 4.0)) throw std::invalid_argument("heavy-tail window needs tau in (3, 4)");
    const double nu = require_nu(d.nu());
    const double c_n = std::pow(static_cast<double>(d.size()), (tau - 3.0) / (tau - 1.0));
    return clamp_probability((1.0 + lambda / c_n) / nu, "heavy-tail window");
}

double pi_window_tau23(const DegreeSequence& d, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("tau23 window needs lambda > 0");
    return clamp_probability(lambda / require_nu(d.nu()), "tau23 window");
}

double pi_window_single_edge(std::size_t n, double tau, double lambda) {
    if (!(tau > 2.0 && tau < 3.0)) throw std::invalid_argument("single-edge window needs tau in (2, 3)");
    if (!(lambda > 0.0)) throw std::invalid_argument("single-edge window needs lambda > 0");
    return clamp_probability(lambda * std::pow(static_cast<double>(n), -(3.0 - tau) / 2.0), "single-edge window");
}

ScalingConstants scaling_constants(std::size_t n, double tau) {
    if (!(tau > 2.0 && tau < 4.0)) throw std::invalid_argument("scaling constants need tau in (2, 4)");
    ScalingConstants s{};
    s.alpha = 1.0 / (tau - 1.0);
    s.rho = (tau - 2.0) / (tau - 1.0);
    s.eta = (tau - 3.0) / (tau - 1.0);
    const double nn = static_cast<double>(n);
    s.a_n = std::pow(nn, s.alpha);
    s.b_n = std::pow(nn, s.rho);
    s.c_n = std::pow(nn, s.eta);
    return s;
}

double PercolationParams::resolve(const DegreeSequence& d) const {
    switch (window) {
        case Window::fixed: check_probability(pi); return pi;
        case Window::finite_third: return pi_window_finite_third(d, lambda);
        case Window::heavy: return pi_window_heavy(d, lambda, tau);
        case Window::tau23: return pi_window_tau23(d, lambda);
        case Window::single_edge: return pi_window_single_edge(d.size(), tau, lambda);
    }
    return pi;
}

double PercolationParams::resolve(std::size_t n, double nu) const {
    const double nn = static_cast<double>(n);
    switch (window) {
        case Window::fixed: check_probability(pi); return pi;
        case Window::finite_third:
            return clamp_probability((1.0 + lambda * std::pow(nn, -1.0 / 3.0)) / require_nu(nu), "finite-third window");
        case Window::heavy:
            if (!(tau > 3.0 && tau < 4.0)) throw std::invalid_argument("heavy-tail window needs tau in (3, 4)");
            return clamp_probability((1.0 + lambda * std::pow(nn, -(tau - 3.0) / (tau - 1.0))) / require_nu(nu),
                                     "heavy-tail window");
        case Window::tau23:
            if (!(lambda > 0.0)) throw std::invalid_argument("tau23 window needs lambda > 0");
            return clamp_probability(lambda / require_nu(nu), "tau23 window");
        case Window::single_edge: return pi_window_single_edge(n, tau, lambda);
    }
    return pi;
}

ExplodedDegrees janson_explode(const DegreeSequence& d, double pi, Rng& rng) {
    check_probability(pi);
    const double keep = std::sqrt(pi);
    ExplodedDegrees out;
    out.n = d.size();
    out.degrees.resize(d.size());
    for (std::size_t v = 0; v < d.size(); ++v) {
        std::binomial_distribution<std::uint32_t> bin(d[v], keep);
        const std::uint32_t k = bin(rng);
        out.degrees[v] = k;
        out.red_count += d[v] - k;
    }
    out.degrees.resize(out.n + out.red_count, 1);
    return out;
}

MultiGraph janson_percolate(const DegreeSequence& d, double pi, Rng& rng) {
    const ExplodedDegrees x = janson_explode(d, pi, rng);
    const MultiGraph big = pair_half_edges(x.degrees, rng);
    std::vector<Edge> kept;
    kept.reserve(big.edge_count());
    for (const auto& e : big.edges()) {
        if (!x.is_red(e.u) && !x.is_red(e.v)) kept.push_back(e);
    }
    return MultiGraph(x.n, std::move(kept));
}

double theta_survival(const Pmf& p, double pi, double tol, int max_iter) {
    check_probability(pi);
    const double mean = pmf_mean(p);
    if (!(mean > 0.0)) throw std::invalid_argument("theta_survival needs a positive mean degree");
    const double nu = (pmf_moment(p, 2) - mean) / mean;
    if (pi * nu <= 1.0) return 0.0;

    const Pmf star = size_biased_distribution(p);
    auto pgf_star_minus_one = [&](double s) {
        double acc = 0.0;  // Horner over k >= 1 of star[k] s^{k-1}
        for (std::size_t k = star.size(); k-- > 1;) acc = acc * s + star[k];
        return acc;
    };
    auto pgf = [&](double s) {
        double acc = 0.0;
        for (std::size_t k = p.size(); k-- > 0;) acc = acc * s + p[k];
        return acc;
    };
    double eta = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double next = pgf_star_minus_one(1.0 - pi + pi * eta);
        if (std::abs(next - eta) < tol) {
            eta = next;
            return std::clamp(1.0 - pgf(1.0 - pi + pi * eta), 0.0, 1.0);
        }
        eta = next;
    }
    throw std::runtime_error("theta_survival: fixed point did not converge");
}

double cm_pi_c(const DegreeSequence& d) { return 1.0 / require_nu(d.nu()); }

double pa_pi_c(std::uint32_t m, double delta) {
    const double mm = static_cast<double>(m);
    if (!(delta > -mm)) throw std::invalid_argument("pa_pi_c needs delta > -m");
    if (delta <= 0.0) return 0.0;
    return delta / (2.0 * (mm * (mm + delta) + std::sqrt(mm * (mm - 1.0) * (mm + delta) * (mm + 1.0 + delta))));
}

double ua_pi_c(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("ua_pi_c needs m >= 1");
    const double mm = static_cast<double>(m);
    // 1 / (2 (m + sqrt(m (m - 1)))), rationalized.
    return (mm - std::sqrt(mm * (mm - 1.0))) / (2.0 * mm);
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::barely_subcritical: return "barely-subcritical";
        case Regime::critical_window: return "critical-window";
        case Regime::barely_supercritical: return "barely-supercritical";
        case Regime::indeterminate: return "indeterminate";
    }
    return "?";
}

RegimeReport regime_diagnostic(std::span<const ComponentPairSample> samples, const RegimeThresholds& th) {
    if (samples.size() < 2) throw std::invalid_argument("regime_diagnostic needs at least 2 samples");
    RegimeReport r;
    r.ratios.reserve(samples.size());
    for (const auto& s : samples) {
        r.ratios.push_back(s.largest == 0 ? 0.0 : static_cast<double>(s.second) / static_cast<double>(s.largest));
    }
    const double count = static_cast<double>(r.ratios.size());
    double sum = 0, sq = 0;
    for (double x : r.ratios) {
        sum += x;
        if (x < th.low) r.fraction_low += 1;
        else if (x > th.high) r.fraction_high += 1;
        else r.fraction_mid += 1;
    }
    r.mean = sum / count;
    for (double x : r.ratios) sq += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(sq / (count - 1));
    r.fraction_low /= count;
    r.fraction_mid /= count;
    r.fraction_high /= count;
    std::vector<double> sorted = r.ratios;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    r.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    if (r.fraction_mid >= th.mass_window && r.stddev >= th.spread) r.regime = Regime::critical_window;
    else if (r.fraction_low >= 0.5) r.regime = Regime::barely_supercritical;
    else if (r.fraction_low <= 0.1) r.regime = Regime::barely_subcritical;
    else r.regime = Regime::indeterminate;
    return r;
}

}  // namespace percolab
