#include "percolab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace percolab {

MultiGraph pair_half_edges(std::span<const std::uint32_t> d, Rng& rng) {
    const std::uint64_t total = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
    if (total % 2 != 0) throw std::invalid_argument("configuration model needs an even degree total");
    std::vector<Vertex> half(total);
    std::size_t pos = 0;
    for (std::size_t v = 0; v < d.size(); ++v) {
        for (std::uint32_t k = 0; k < d[v]; ++k) half[pos++] = static_cast<Vertex>(v);
    }
    for (std::size_t i = total; i > 1; --i) {
        std::swap(half[i - 1], half[uniform_below(rng, i)]);
    }
    std::vector<Edge> edges(total / 2);
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = {half[2 * i], half[2 * i + 1]};
    return MultiGraph(d.size(), std::move(edges));
}

MultiGraph configuration_model(const DegreeSequence& d, Rng& rng) { return pair_half_edges(d.values(), rng); }

double rank1_edge_probability(Rank1Kind kind, double x) {
    switch (kind) {
        case Rank1Kind::norros_reittu: return -std::expm1(-x);
        case Rank1Kind::chung_lu: return std::min(x, 1.0);
        case Rank1Kind::generalized: return x / (1.0 + x);
    }
    return 0.0;
}

namespace {

// Zero-truncated Poisson(x), x > 0.
std::uint32_t zero_truncated_poisson(double x, Rng& rng) {
    if (x >= 1.0) {
        std::poisson_distribution<std::uint32_t> pois(x);
        for (;;) {
            const auto k = pois(rng);
            if (k > 0) return k;
        }
    }
    double u = uniform01(rng) * -std::expm1(-x);
    double term = x * std::exp(-x);
    std::uint32_t k = 1;
    while (u > term && term > 0.0) {
        u -= term;
        ++k;
        term *= x / k;
    }
    return k;
}

// Geometric skipping over pairs (i, j > i) of weights sorted in nonincreasing
// order; the edge probability bound decreases along j.
MultiGraph rank1_impl(const WeightSequence& w, Rank1Kind kind, bool multi, Rng& rng) {
    const std::size_t n = w.size();
    const double total = w.total();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return w[a] > w[b]; });
    std::vector<double> ws(n);
    for (std::size_t i = 0; i < n; ++i) ws[i] = w[order[i]];

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(total / 2 * 1.1) + 16);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t j = i + 1;
        double p = rank1_edge_probability(kind, ws[i] * ws[j] / total);
        while (j < n && p > 0.0) {
            if (p < 1.0) {
                const double skip = std::floor(std::log(uniform_open0(rng)) / std::log1p(-p));
                if (skip >= static_cast<double>(n - j)) break;
                j += static_cast<std::size_t>(skip);
            }
            const double x = ws[i] * ws[j] / total;
            const double q = rank1_edge_probability(kind, x);
            if (q >= p || uniform01(rng) * p < q) {
                const std::uint32_t copies = multi ? zero_truncated_poisson(x, rng) : 1;
                for (std::uint32_t c = 0; c < copies; ++c) edges.push_back({order[i], order[j]});
            }
            p = q;
            ++j;
        }
    }
    return MultiGraph(n, std::move(edges));
}

}  // namespace

MultiGraph rank1_graph(const WeightSequence& w, Rank1Kind kind, Rng& rng) { return rank1_impl(w, kind, false, rng); }
MultiGraph nr_graph(const WeightSequence& w, Rng& rng) { return rank1_impl(w, Rank1Kind::norros_reittu, false, rng); }
MultiGraph chung_lu(const WeightSequence& w, Rng& rng) { return rank1_impl(w, Rank1Kind::chung_lu, false, rng); }
MultiGraph grg(const WeightSequence& w, Rng& rng) { return rank1_impl(w, Rank1Kind::generalized, false, rng); }
MultiGraph nr_multigraph(const WeightSequence& w, Rng& rng) {
    return rank1_impl(w, Rank1Kind::norros_reittu, true, rng);
}

// ---------------------------------------------------------------------------

void PASpec::validate() const {
    if (m < 1) throw std::invalid_argument("attachment needs m >= 1");
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("attachment needs a in [0, 1]");
    if (a == 0.0 && !(delta > 0.0)) throw std::invalid_argument("uniform attachment (a = 0) needs delta > 0");
    if (a > 0.0 && !(delta > -static_cast<double>(m) / a)) throw std::invalid_argument("attachment needs delta > -m/a");
    const InitialGraph g = initial_graph();
    if (std::min(g.degree_first(), g.degree_second()) > m) {
        throw std::invalid_argument("initial graph needs a vertex of degree at most m");
    }
    for (double deg : {static_cast<double>(g.degree_first()), static_cast<double>(g.degree_second()),
                       static_cast<double>(m)}) {
        if (a * deg + delta < 0.0) throw std::invalid_argument("attachment weight a*d + delta is negative");
    }
    if (!(pa_normalizer(*this, 3, 1) > 0.0)) throw std::invalid_argument("attachment normalizer is not positive");
}

double pa_normalizer(const PASpec& spec, std::size_t v, std::uint32_t j) {
    const InitialGraph g = spec.initial_graph();
    const double d2 = static_cast<double>(g.degree_first() + g.degree_second());
    return spec.a * d2 + 2.0 * spec.delta +
           (2.0 * spec.a * spec.m + spec.delta) * (static_cast<double>(v) - 3.0) +
           spec.a * (static_cast<double>(j) - 1.0);
}

AttachmentProcess::AttachmentProcess(PASpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const InitialGraph g = spec_.initial_graph();
    for (std::uint32_t k = 0; k < g.between; ++k) initial_edges_.push_back({0, 1});
    for (std::uint32_t k = 0; k < g.loops_first; ++k) initial_edges_.push_back({0, 0});
    for (std::uint32_t k = 0; k < g.loops_second; ++k) initial_edges_.push_back({1, 1});
    degree_ = {g.degree_first(), g.degree_second()};
    degree_sum_ = degree_[0] + degree_[1];
    if (spec_.a > 0.0) {
        for (const auto& e : initial_edges_) {
            ends_.push_back(e.u);
            ends_.push_back(e.v);
        }
    }
    current_.resize(spec_.m);
}

void AttachmentProcess::reserve(std::size_t n) {
    degree_.reserve(n);
    if (spec_.a > 0.0) ends_.reserve(2 * std::size_t{spec_.m} * n + ends_.size());
}

Vertex AttachmentProcess::pick_target(Rng& rng) {
    const std::size_t count = degree_.size();
    const double a = spec_.a, delta = spec_.delta;
    if (a == 0.0) return static_cast<Vertex>(uniform_below(rng, count));
    if (delta >= 0.0) {
        const double degree_part = a * static_cast<double>(degree_sum_);
        const double total = degree_part + delta * static_cast<double>(count);
        if (uniform01(rng) * total < degree_part) return ends_[uniform_below(rng, ends_.size())];
        return static_cast<Vertex>(uniform_below(rng, count));
    }
    // delta < 0: propose proportional to degree, accept with (a d + delta) / (a d).
    for (;;) {
        const Vertex u = ends_[uniform_below(rng, ends_.size())];
        const double ad = a * degree_[u];
        if (uniform01(rng) * ad < ad + delta) return u;
    }
}

std::span<const Vertex> AttachmentProcess::add_vertex(Rng& rng) {
    const auto v = static_cast<Vertex>(degree_.size());
    for (std::uint32_t j = 0; j < spec_.m; ++j) {
        const Vertex u = pick_target(rng);
        current_[j] = u;
        ++degree_[u];
        ++degree_sum_;
        if (spec_.a > 0.0) ends_.push_back(u);
    }
    degree_.push_back(spec_.m);
    degree_sum_ += spec_.m;
    if (spec_.a > 0.0) ends_.insert(ends_.end(), spec_.m, v);
    return current_;
}

GrowthResult preferential_attachment(std::size_t n, const PASpec& spec, Rng& rng) {
    if (n < 2) throw std::invalid_argument("attachment graphs need n >= 2");
    AttachmentProcess proc(spec);
    proc.reserve(n);
    std::vector<Edge> edges(proc.initial_edges().begin(), proc.initial_edges().end());
    edges.reserve(edges.size() + (n - 2) * std::size_t{spec.m});
    GrowthTrace trace;
    trace.m = spec.m;
    trace.targets.reserve((n - 2) * std::size_t{spec.m});
    for (std::size_t v = 2; v < n; ++v) {
        for (Vertex u : proc.add_vertex(rng)) {
            edges.push_back({static_cast<Vertex>(v), u});
            trace.targets.push_back(u);
        }
    }
    return {MultiGraph(n, std::move(edges)), std::move(trace)};
}

GrowthResult uniform_attachment(std::size_t n, std::uint32_t m, Rng& rng) {
    PASpec spec;
    spec.m = m;
    spec.a = 0.0;
    spec.delta = 1.0;
    return preferential_attachment(n, spec, rng);
}

std::vector<double> yule_arrival_times(std::size_t n, Rng& rng) {
    std::vector<double> t(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) t[k] = t[k - 1] + exponential(rng, static_cast<double>(k));
    return t;
}

}  // namespace percolab
