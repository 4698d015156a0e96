#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace percolab {

// Per-vertex degrees, all >= 1. Total and nu are cached at construction.
class DegreeSequence {
public:
    // Throws std::invalid_argument if empty or any entry is 0.
    explicit DegreeSequence(std::vector<std::uint32_t> d);

    std::span<const std::uint32_t> values() const noexcept { return d_; }
    std::size_t size() const noexcept { return d_.size(); }
    std::uint32_t operator[](std::size_t v) const { return d_[v]; }
    std::uint64_t total() const noexcept { return total_; }
    bool even_total() const noexcept { return total_ % 2 == 0; }
    double nu() const noexcept { return nu_; }
    std::uint32_t max() const noexcept { return max_; }

private:
    std::vector<std::uint32_t> d_;
    std::uint64_t total_ = 0;
    double nu_ = 0.0;
    std::uint32_t max_ = 0;
};

class WeightSequence {
public:
    // Throws std::invalid_argument if empty or any entry is not > 0.
    explicit WeightSequence(std::vector<double> w);

    std::span<const double> values() const noexcept { return w_; }
    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t v) const { return w_[v]; }
    double total() const noexcept { return total_; }

private:
    std::vector<double> w_;
    double total_ = 0.0;
};

// Pareto-type tail 1 - F(x) = (c_F / x)^(tau - 1), x >= c_F.
struct PowerLawSpec {
    double tau = 3.5;
    double c_f = 1.0;

    void validate() const;  // tau > 2, c_f > 0
    double alpha() const { return 1.0 / (tau - 1.0); }
    // Inverse of 1 - F at u in (0,1].
    double inverse_tail(double u) const;
};

// nu_n = sum d(d-1) / sum d.
double nu_n(const DegreeSequence& d);
double nu_n(std::span<const std::uint32_t> d);
// n^{-1} sum d^k, k >= 1.
double empirical_moment(const DegreeSequence& d, int k);

DegreeSequence regular_degrees(std::size_t n, std::uint32_t r);
// Adds 1 to the first entry when the total is odd.
std::vector<std::uint32_t> fix_parity(std::vector<std::uint32_t> d);

// w_v = c_F (n / v)^{1/(tau-1)} for v = 1..n (stored at index v-1).
WeightSequence power_law_weights(std::size_t n, const PowerLawSpec& spec);
// d_v = max(1, floor(inverse_tail(v / n))), then parity fix-up.
DegreeSequence quantile_degrees(std::size_t n, const PowerLawSpec& spec);

// Coupled iid sample: D_(n-i+1) = inverse_tail(Gamma_i / Gamma_{n+1}) with Gamma the
// partial sums of the given n+1 exponentials. Degrees are floored and clamped to 1;
// output is sorted descending (index 0 largest) before the parity fix-up.
DegreeSequence iid_degrees_coupled(std::size_t n, const PowerLawSpec& spec,
                                   std::span<const double> exponentials);
DegreeSequence iid_degrees_coupled(std::size_t n, const PowerLawSpec& spec, Rng& rng);

// Random order in which vertex j is picked next with probability proportional to
// weights[j] among the remaining ones. Zero weights go last in uniform order.
std::vector<Vertex> size_biased_reordering(std::span<const std::uint32_t> weights, Rng& rng);
std::vector<Vertex> size_biased_reordering(const DegreeSequence& d, Rng& rng);

// Probability mass functions indexed by value.
using Pmf = std::vector<double>;

Pmf size_biased_distribution(const Pmf& p);  // throws on zero mean
Pmf empirical_pmf(std::span<const std::uint32_t> d);
double pmf_mean(const Pmf& p);
double pmf_moment(const Pmf& p, int k);

}  // namespace percolab
