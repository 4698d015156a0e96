#include "percolab/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace percolab {

namespace {

// floor() that tolerates pow() landing a few ulps under an integer.
double safe_floor(double x) { return std::floor(x * (1.0 + 1e-12)); }

std::uint32_t to_degree(double x) {
    const double f = safe_floor(x);
    if (f >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
        throw std::overflow_error("degree does not fit in 32 bits");
    }
    return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(f));
}

}  // namespace

DegreeSequence::DegreeSequence(std::vector<std::uint32_t> d) : d_(std::move(d)) {
    if (d_.empty()) throw std::invalid_argument("degree sequence is empty");
    std::uint64_t second = 0;
    for (auto x : d_) {
        if (x == 0) throw std::invalid_argument("degree sequence contains a zero");
        total_ += x;
        second += static_cast<std::uint64_t>(x) * (x - 1);
        max_ = std::max(max_, x);
    }
    nu_ = static_cast<double>(second) / static_cast<double>(total_);
}

WeightSequence::WeightSequence(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw std::invalid_argument("weight sequence is empty");
    for (double x : w_) {
        if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("weights must be positive and finite");
        total_ += x;
    }
}

void PowerLawSpec::validate() const {
    if (!(tau > 2.0)) throw std::invalid_argument("power law needs tau > 2");
    if (!(c_f > 0.0)) throw std::invalid_argument("power law needs c_F > 0");
}

double PowerLawSpec::inverse_tail(double u) const { return c_f * std::pow(u, -alpha()); }

double nu_n(std::span<const std::uint32_t> d) {
    if (d.empty()) throw std::invalid_argument("nu_n of an empty sequence");
    std::uint64_t first = 0, second = 0;
    for (auto x : d) {
        first += x;
        second += static_cast<std::uint64_t>(x) * (x > 0 ? x - 1 : 0);
    }
    if (first == 0) throw std::invalid_argument("nu_n needs a positive degree total");
    return static_cast<double>(second) / static_cast<double>(first);
}

double nu_n(const DegreeSequence& d) { return d.nu(); }

double empirical_moment(const DegreeSequence& d, int k) {
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    long double sum = 0;
    for (auto x : d.values()) sum += std::pow(static_cast<long double>(x), k);
    return static_cast<double>(sum / static_cast<long double>(d.size()));
}

DegreeSequence regular_degrees(std::size_t n, std::uint32_t r) {
    return DegreeSequence(std::vector<std::uint32_t>(n, r));
}

std::vector<std::uint32_t> fix_parity(std::vector<std::uint32_t> d) {
    if (d.empty()) return d;
    const std::uint64_t total = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
    if (total % 2 == 1) ++d[0];
    return d;
}

WeightSequence power_law_weights(std::size_t n, const PowerLawSpec& spec) {
    spec.validate();
    if (n == 0) throw std::invalid_argument("power_law_weights needs n >= 1");
    std::vector<double> w(n);
    const double nn = static_cast<double>(n);
    for (std::size_t v = 1; v <= n; ++v) w[v - 1] = spec.inverse_tail(static_cast<double>(v) / nn);
    return WeightSequence(std::move(w));
}

DegreeSequence quantile_degrees(std::size_t n, const PowerLawSpec& spec) {
    spec.validate();
    if (n == 0) throw std::invalid_argument("quantile_degrees needs n >= 1");
    std::vector<std::uint32_t> d(n);
    const double nn = static_cast<double>(n);
    for (std::size_t v = 1; v <= n; ++v) d[v - 1] = to_degree(spec.inverse_tail(static_cast<double>(v) / nn));
    return DegreeSequence(fix_parity(std::move(d)));
}

DegreeSequence iid_degrees_coupled(std::size_t n, const PowerLawSpec& spec, std::span<const double> exponentials) {
    spec.validate();
    if (n == 0) throw std::invalid_argument("iid_degrees_coupled needs n >= 1");
    if (exponentials.size() < n + 1) throw std::invalid_argument("iid_degrees_coupled needs n + 1 exponentials");
    std::vector<double> gamma(n + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        acc += exponentials[i];
        gamma[i] = acc;
    }
    const double last = gamma[n];
    std::vector<std::uint32_t> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = to_degree(spec.inverse_tail(gamma[i] / last));
    return DegreeSequence(fix_parity(std::move(d)));
}

DegreeSequence iid_degrees_coupled(std::size_t n, const PowerLawSpec& spec, Rng& rng) {
    std::vector<double> e(n + 1);
    for (auto& x : e) x = exponential(rng);
    return iid_degrees_coupled(n, spec, e);
}

std::vector<Vertex> size_biased_reordering(std::span<const std::uint32_t> weights, Rng& rng) {
    // Exponential clocks with rates w_v ring in size-biased order.
    struct Key {
        double clock;
        double tie;
        Vertex v;
    };
    std::vector<Key> keys(weights.size());
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < weights.size(); ++v) {
        const double e = exponential(rng);
        keys[v] = {weights[v] > 0 ? e / weights[v] : inf, weights[v] > 0 ? 0.0 : uniform01(rng),
                   static_cast<Vertex>(v)};
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        return a.clock != b.clock ? a.clock < b.clock : a.tie < b.tie;
    });
    std::vector<Vertex> order(weights.size());
    for (std::size_t i = 0; i < keys.size(); ++i) order[i] = keys[i].v;
    return order;
}

std::vector<Vertex> size_biased_reordering(const DegreeSequence& d, Rng& rng) {
    return size_biased_reordering(d.values(), rng);
}

double pmf_moment(const Pmf& p, int k) {
    long double s = 0;
    for (std::size_t x = 0; x < p.size(); ++x) s += p[x] * std::pow(static_cast<long double>(x), k);
    return static_cast<double>(s);
}

double pmf_mean(const Pmf& p) { return pmf_moment(p, 1); }

Pmf size_biased_distribution(const Pmf& p) {
    const double mean = pmf_mean(p);
    if (!(mean > 0.0)) throw std::invalid_argument("size-biasing needs a positive mean");
    Pmf q(p.size(), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) q[k] = static_cast<double>(k) * p[k] / mean;
    return q;
}

Pmf empirical_pmf(std::span<const std::uint32_t> d) {
    if (d.empty()) throw std::invalid_argument("empirical_pmf of an empty sequence");
    const auto max = *std::max_element(d.begin(), d.end());
    Pmf p(max + 1, 0.0);
    for (auto x : d) p[x] += 1.0;
    for (auto& x : p) x /= static_cast<double>(d.size());
    return p;
}

}  // namespace percolab
