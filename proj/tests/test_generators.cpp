#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "percolab/generators.hpp"

using namespace percolab;

namespace {

using EdgeKey = std::vector<std::pair<Vertex, Vertex>>;

EdgeKey canonical(const MultiGraph& g) {
    EdgeKey key;
    for (const auto& e : g.edges()) key.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(key.begin(), key.end());
    return key;
}

// Distribution of the multigraph produced by a uniform perfect matching of the
// half-edges, by enumerating every matching.
std::map<EdgeKey, double> matching_law(const std::vector<std::uint32_t>& d) {
    std::vector<Vertex> owner;
    for (Vertex v = 0; v < d.size(); ++v) owner.insert(owner.end(), d[v], v);
    std::map<EdgeKey, double> law;
    std::size_t total = 0;
    std::vector<int> used(owner.size(), 0);
    EdgeKey current;
    std::function<void()> rec = [&] {
        const auto it = std::find(used.begin(), used.end(), 0);
        if (it == used.end()) {
            EdgeKey k = current;
            std::sort(k.begin(), k.end());
            law[k] += 1.0;
            ++total;
            return;
        }
        const std::size_t i = it - used.begin();
        used[i] = 1;
        for (std::size_t j = i + 1; j < owner.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            current.emplace_back(std::min(owner[i], owner[j]), std::max(owner[i], owner[j]));
            rec();
            current.pop_back();
            used[j] = 0;
        }
        used[i] = 0;
    };
    rec();
    for (auto& [k, p] : law) p /= static_cast<double>(total);
    return law;
}

template <class Key>
double chi_square(const std::map<Key, std::size_t>& counts, const std::map<Key, double>& law, std::size_t N) {
    double chi2 = 0;
    for (const auto& [k, p] : law) {
        const double e = p * static_cast<double>(N);
        const auto it = counts.find(k);
        const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        chi2 += (c - e) * (c - e) / e;
    }
    for (const auto& [k, c] : counts) {
        if (!law.count(k)) return INFINITY;
    }
    return chi2;
}

// Upper 0.1% points of chi-square for small degrees of freedom.
double chi2_critical(std::size_t df) {
    static const double table[] = {0,     10.83, 13.82, 16.27, 18.47, 20.52, 22.46, 24.32, 26.12, 27.88, 29.59,
                                   31.26, 32.91, 34.53, 36.12, 37.70, 39.25, 40.79, 42.31, 43.82, 45.31,
                                   46.80, 48.27, 49.73, 51.18, 52.62, 54.05, 55.48, 56.89, 58.30, 59.70,
                                   61.10, 62.49, 63.87, 65.25, 66.62};
    REQUIRE(df < std::size(table));
    return table[df];
}

}  // namespace

TEST_CASE("configuration model: degrees are conserved") {
    Rng rng(1);
    const DegreeSequence d({5, 1, 3, 3, 2, 1, 7});
    for (int i = 0; i < 100; ++i) {
        const MultiGraph g = configuration_model(d, rng);
        CHECK(g.edge_count() == d.total() / 2);
        const auto deg = g.degrees();
        CHECK(std::equal(deg.begin(), deg.end(), d.values().begin()));
    }
    CHECK_THROWS_AS(configuration_model(DegreeSequence({1, 2}), rng), std::invalid_argument);
}

TEST_CASE("configuration model: small cases by enumeration of matchings") {
    Rng rng(2);
    const MultiGraph single = configuration_model(DegreeSequence({1, 1}), rng);
    CHECK(canonical(single) == EdgeKey{{0, 1}});

    const auto law = matching_law({2, 1, 1});
    CHECK(law.at(EdgeKey{{0, 1}, {0, 2}}) == doctest::Approx(2.0 / 3.0));
    CHECK(law.at(EdgeKey{{0, 0}, {1, 2}}) == doctest::Approx(1.0 / 3.0));

    for (const auto& d : {std::vector<std::uint32_t>{2, 1, 1}, std::vector<std::uint32_t>{3, 2, 1},
                          std::vector<std::uint32_t>{2, 2, 2, 2}, std::vector<std::uint32_t>{4, 1, 1, 1, 1}}) {
        const auto exact = matching_law(d);
        const std::size_t N = 60000;
        std::map<EdgeKey, std::size_t> counts;
        for (std::size_t i = 0; i < N; ++i) ++counts[canonical(configuration_model(DegreeSequence(d), rng))];
        CHECK(chi_square(counts, exact, N) < chi2_critical(exact.size() - 1));
    }
}

TEST_CASE("rank-1 edge probabilities") {
    CHECK(rank1_edge_probability(Rank1Kind::norros_reittu, 0.5) == doctest::Approx(1 - std::exp(-0.5)));
    CHECK(rank1_edge_probability(Rank1Kind::norros_reittu, 0.5) == doctest::Approx(0.3935).epsilon(1e-4));
    CHECK(rank1_edge_probability(Rank1Kind::chung_lu, 0.5) == 0.5);
    CHECK(rank1_edge_probability(Rank1Kind::chung_lu, 2.0) == 1.0);
    CHECK(rank1_edge_probability(Rank1Kind::generalized, 0.5) == doctest::Approx(1.0 / 3.0));
    for (double x : {1e-4, 1e-6}) {
        for (auto k : {Rank1Kind::norros_reittu, Rank1Kind::chung_lu, Rank1Kind::generalized}) {
            CHECK(rank1_edge_probability(k, x) == doctest::Approx(x).epsilon(2 * x));
        }
    }
}

TEST_CASE("rank-1 graphs follow the pairwise law exactly on n = 3") {
    const WeightSequence w({2.0, 1.0, 0.5});
    const double l = w.total();
    const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto kind : {Rank1Kind::norros_reittu, Rank1Kind::chung_lu, Rank1Kind::generalized}) {
        std::map<int, double> law;
        for (int mask = 0; mask < 8; ++mask) {
            double p = 1;
            for (int k = 0; k < 3; ++k) {
                const double q = rank1_edge_probability(kind, w[pairs[k].first] * w[pairs[k].second] / l);
                p *= (mask >> k & 1) ? q : 1 - q;
            }
            law[mask] = p;
        }
        Rng rng(3);
        const std::size_t N = 100000;
        std::map<int, std::size_t> counts, collapsed;
        for (std::size_t i = 0; i < N; ++i) {
            const MultiGraph g = rank1_graph(w, kind, rng);
            int mask = 0;
            for (const auto& e : g.edges()) {
                REQUIRE(e.u != e.v);
                for (int k = 0; k < 3; ++k) {
                    if (canonical(MultiGraph(3, {e})) == EdgeKey{{Vertex(pairs[k].first), Vertex(pairs[k].second)}}) {
                        REQUIRE((mask >> k & 1) == 0);
                        mask |= 1 << k;
                    }
                }
            }
            ++counts[mask];
            if (kind == Rank1Kind::norros_reittu) {
                const MultiGraph mg = nr_multigraph(w, rng);
                int m2 = 0;
                for (int k = 0; k < 3; ++k) {
                    if (mg.multiplicity(pairs[k].first, pairs[k].second) > 0) m2 |= 1 << k;
                }
                ++collapsed[m2];
            }
        }
        CHECK(chi_square(counts, law, N) < chi2_critical(7));
        if (kind == Rank1Kind::norros_reittu) CHECK(chi_square(collapsed, law, N) < chi2_critical(7));
    }
}

TEST_CASE("nr_multigraph multiplicities are Poisson with the rank-1 mean") {
    Rng rng(4);
    const WeightSequence w({1.0, 1.0});
    const std::size_t N = 100000;
    double sum = 0, sq = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const MultiGraph g = nr_multigraph(w, rng);
        CHECK(g.multiplicity(0, 0) == 0);
        const double k = static_cast<double>(g.multiplicity(0, 1));
        sum += k;
        sq += k * k;
    }
    const double mean = sum / N, var = sq / N - mean * mean;
    CHECK(std::abs(mean - 0.5) < 3 * std::sqrt(0.5 / N));
    // Var of the sample variance of Poisson(mu) is about (mu + 2 mu^2) / N.
    CHECK(std::abs(var - 0.5) < 3 * std::sqrt((0.5 + 2 * 0.25) / N));

    const WeightSequence w4({3.0, 2.0, 1.0, 1.0});
    std::vector<double> total(6, 0);
    const std::size_t M = 50000;
    for (std::size_t i = 0; i < M; ++i) {
        const MultiGraph g = nr_multigraph(w4, rng);
        int k = 0;
        for (Vertex u = 0; u < 4; ++u) {
            for (Vertex v = u + 1; v < 4; ++v) total[k++] += static_cast<double>(g.multiplicity(u, v));
        }
    }
    int k = 0;
    for (Vertex u = 0; u < 4; ++u) {
        for (Vertex v = u + 1; v < 4; ++v, ++k) {
            const double mu = w4[u] * w4[v] / w4.total();
            CHECK(std::abs(total[k] / M - mu) < 3 * std::sqrt(mu / M));
        }
    }
}

TEST_CASE("nr_graph presence indicators are uncorrelated across pairs") {
    Rng rng(5);
    const WeightSequence w({3.0, 2.0, 1.5, 1.0});
    const std::size_t N = 100000;
    std::vector<std::array<int, 6>> samples(N);
    for (std::size_t i = 0; i < N; ++i) {
        const MultiGraph g = nr_graph(w, rng);
        int k = 0;
        for (Vertex u = 0; u < 4; ++u) {
            for (Vertex v = u + 1; v < 4; ++v) samples[i][k++] = g.multiplicity(u, v) > 0;
        }
    }
    for (int a = 0; a < 6; ++a) {
        for (int b = a + 1; b < 6; ++b) {
            double ma = 0, mb = 0, mab = 0;
            for (const auto& s : samples) {
                ma += s[a];
                mb += s[b];
                mab += s[a] * s[b];
            }
            ma /= N;
            mb /= N;
            const double cov = mab / N - ma * mb;
            const double sd = std::sqrt(ma * (1 - ma) * mb * (1 - mb) / N);
            CHECK(std::abs(cov) < 4 * sd);
        }
    }
}

TEST_CASE("large weight sequences: edge count matches the rank-1 expectation") {
    Rng rng(6);
    const WeightSequence w = power_law_weights(3000, {2.5, 1.0});
    for (auto kind : {Rank1Kind::norros_reittu, Rank1Kind::chung_lu, Rank1Kind::generalized}) {
        double expect = 0, var = 0;
        for (std::size_t u = 0; u < w.size(); ++u) {
            for (std::size_t v = u + 1; v < w.size(); ++v) {
                const double p = rank1_edge_probability(kind, w[u] * w[v] / w.total());
                expect += p;
                var += p * (1 - p);
            }
        }
        double sum = 0;
        const int reps = 20;
        for (int r = 0; r < reps; ++r) sum += static_cast<double>(rank1_graph(w, kind, rng).edge_count());
        CHECK(std::abs(sum / reps - expect) < 4 * std::sqrt(var / reps));
    }
}

TEST_CASE("PA normalizer and validation") {
    PASpec s;
    s.m = 2;
    s.delta = 0.5;
    s.a = 1.0;
    // v = 3, j = 1: a d_[2] + 2 delta, with d_[2] = 2m for m parallel edges.
    CHECK(pa_normalizer(s, 3, 1) == doctest::Approx(4.0 + 1.0));
    // Direct sum of a d_u + delta over u < v.
    CHECK(pa_normalizer(s, 5, 2) == doctest::Approx(1.0 * (4 + 4 + 4 + 1) + 0.5 * 4));

    PASpec bad = s;
    bad.delta = -2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.delta = 0;
    bad.a = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.a = 1;
    bad.m = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("PA with m = 1 from a single edge picks either vertex with probability 1/2") {
    PASpec s;
    s.m = 1;
    Rng rng(7);
    const std::size_t N = 100000;
    std::size_t to_first = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const GrowthResult r = preferential_attachment(3, s, rng);
        to_first += r.trace.target(2, 0) == 0;
    }
    CHECK(std::abs(to_first / double(N) - 0.5) < 3 * std::sqrt(0.25 / N));
}

namespace {

// Law of the target lists of vertices 3 and 4, computed step by step from
// (a d_u + delta) / sum_w (a d_w + delta) with degrees updated after each edge.
std::map<std::vector<Vertex>, double> pa_law_four(const PASpec& s) {
    std::map<std::vector<Vertex>, double> law;
    const InitialGraph init = s.initial_graph();
    std::function<void(std::vector<double>, std::vector<Vertex>, double)> rec =
        [&](std::vector<double> deg, std::vector<Vertex> targets, double p) {
            const std::size_t placed = targets.size();
            if (placed == 2 * s.m) {
                law[targets] += p;
                return;
            }
            const std::size_t v = 2 + placed / s.m;  // 0-based arriving vertex
            if (placed % s.m == 0 && v == 3) deg[2] += s.m;  // vertex 2's own ends arrive with it
            double norm = 0;
            for (std::size_t u = 0; u < v; ++u) norm += s.a * deg[u] + s.delta;
            for (std::size_t u = 0; u < v; ++u) {
                const double q = (s.a * deg[u] + s.delta) / norm;
                if (q <= 0) continue;
                auto d2 = deg;
                d2[u] += 1;
                auto t2 = targets;
                t2.push_back(static_cast<Vertex>(u));
                rec(d2, t2, p * q);
            }
        };
    rec({double(init.degree_first()), double(init.degree_second()), 0, 0}, {}, 1.0);
    return law;
}

}  // namespace

TEST_CASE("PA on four vertices matches the step-by-step law") {
    struct Case {
        double a, delta;
    };
    for (Case c : {Case{1.0, 0.0}, Case{1.0, -1.0}, Case{0.5, 0.5}, Case{0.0, 1.0}}) {
        PASpec s;
        s.m = 2;
        s.a = c.a;
        s.delta = c.delta;
        const auto law = pa_law_four(s);
        double total = 0;
        for (const auto& [k, p] : law) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        Rng rng(8);
        const std::size_t N = 100000;
        std::map<std::vector<Vertex>, std::size_t> counts;
        for (std::size_t i = 0; i < N; ++i) {
            const GrowthResult r = preferential_attachment(4, s, rng);
            ++counts[r.trace.targets];
            const auto deg = r.graph.degrees();
            CHECK(std::accumulate(deg.begin(), deg.end(), 0u) == 2 * 2 * 3);
        }
        CAPTURE(c.a);
        CAPTURE(c.delta);
        CHECK(chi_square(counts, law, N) < chi2_critical(law.size() - 1));
    }
}

TEST_CASE("attachment targets precede the arriving vertex and out-degree is m") {
    PASpec s;
    s.m = 3;
    s.delta = -1.5;
    Rng rng(9);
    const GrowthResult r = preferential_attachment(500, s, rng);
    CHECK(r.trace.arrivals() == 498);
    for (Vertex v = 2; v < 500; ++v) {
        for (std::uint32_t j = 0; j < 3; ++j) CHECK(r.trace.target(v, j) < v);
    }
    CHECK(r.graph.edge_count() == 3 + 3 * 498);
}

TEST_CASE("uniform attachment") {
    Rng rng(10);
    const std::size_t N = 100000;
    std::size_t first = 0;
    for (std::size_t i = 0; i < N; ++i) first += uniform_attachment(3, 1, rng).trace.target(2, 0) == 0;
    CHECK(std::abs(first / double(N) - 0.5) < 3 * std::sqrt(0.25 / N));

    // Degree of vertex 1 after n arrivals: sum over v = 2..n of m / (v - 1).
    const std::size_t n = 200;
    const std::uint32_t m = 2;
    double oracle = 0;
    for (std::size_t v = 2; v <= n; ++v) oracle += double(m) / double(v - 1);
    double sum = 0, sq = 0;
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
        const GrowthResult g = uniform_attachment(n, m, rng);
        CHECK(g.graph.edge_count() == m * (n - 1));
        double hits = 0;
        for (Vertex v = 2; v < n; ++v) {
            for (std::uint32_t j = 0; j < m; ++j) hits += g.trace.target(v, j) == 0;
        }
        const double deg1 = m + hits;
        sum += deg1;
        sq += deg1 * deg1;
    }
    const double mean = sum / reps, sd = std::sqrt((sq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - oracle) < 3 * sd);
}

TEST_CASE("Yule arrival times") {
    Rng rng(11);
    const auto t = yule_arrival_times(50, rng);
    CHECK(t[0] == 0.0);
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] > t[k - 1]);

    // Mean increment k -> k+1 is 1/k; N(t) e^{-t} has mean 1.
    const int reps = 20000;
    const double horizon = 4.0;
    std::vector<double> inc(4, 0);
    double sum = 0, sq = 0;
    for (int r = 0; r < reps; ++r) {
        const auto s = yule_arrival_times(3000, rng);
        for (std::size_t k = 1; k <= 4; ++k) inc[k - 1] += s[k] - s[k - 1];
        REQUIRE(s.back() > horizon);
        const double N = static_cast<double>(std::upper_bound(s.begin(), s.end(), horizon) - s.begin());
        const double x = N * std::exp(-horizon);
        sum += x;
        sq += x * x;
    }
    for (std::size_t k = 1; k <= 4; ++k) CHECK(std::abs(inc[k - 1] / reps - 1.0 / k) < 3.0 / k / std::sqrt(reps));
    const double mean = sum / reps, sd = std::sqrt((sq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - 1.0) < 3 * sd);
}
