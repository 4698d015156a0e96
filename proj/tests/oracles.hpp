#pragma once

// Brute-force reference implementations shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace oracle {

struct Comp {
    std::uint64_t size, surplus, min_vertex;
    bool operator==(const Comp&) const = default;
};

// Components by iterative depth-first search over an adjacency list, sorted by
// (size desc, min vertex asc).
inline std::vector<Comp> dfs_components(const percolab::MultiGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<std::uint64_t> loops(n, 0);
    for (const auto& e : g.edges()) {
        if (e.u == e.v) {
            ++loops[e.u];
        } else {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    std::vector<int> seen(n, 0);
    std::vector<Comp> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        std::uint64_t size = 0, half_degrees = 0, min_v = s;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            ++size;
            min_v = std::min<std::uint64_t>(min_v, v);
            half_degrees += adj[v].size() + 2 * loops[v];
            for (std::size_t w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        const std::uint64_t edges = half_degrees / 2;
        out.push_back({size, edges + 1 - size, min_v});
    }
    std::sort(out.begin(), out.end(), [](const Comp& a, const Comp& b) {
        return a.size != b.size ? a.size > b.size : a.min_vertex < b.min_vertex;
    });
    return out;
}

inline percolab::MultiGraph random_small_graph(percolab::Rng& rng, std::size_t max_n = 8, std::size_t max_m = 12) {
    const std::size_t n = 1 + percolab::uniform_below(rng, max_n);
    const std::size_t m = percolab::uniform_below(rng, max_m + 1);
    std::vector<percolab::Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        edges.push_back({static_cast<percolab::Vertex>(percolab::uniform_below(rng, n)),
                         static_cast<percolab::Vertex>(percolab::uniform_below(rng, n))});
    }
    return percolab::MultiGraph(n, std::move(edges));
}

using SizeMultiset = std::vector<std::uint64_t>;  // component sizes, descending

inline SizeMultiset size_multiset(const percolab::MultiGraph& g) {
    SizeMultiset out;
    for (const auto& c : dfs_components(g)) out.push_back(c.size);
    return out;
}

// Calls f(edges) once for every perfect matching of the half-edges of d.
inline void for_each_matching(const std::vector<std::uint32_t>& d,
                              const std::function<void(const std::vector<percolab::Edge>&)>& f) {
    std::vector<percolab::Vertex> owner;
    for (percolab::Vertex v = 0; v < d.size(); ++v) owner.insert(owner.end(), d[v], v);
    std::vector<int> used(owner.size(), 0);
    std::vector<percolab::Edge> edges;
    std::function<void()> rec = [&] {
        const auto it = std::find(used.begin(), used.end(), 0);
        if (it == used.end()) {
            f(edges);
            return;
        }
        const std::size_t i = it - used.begin();
        used[i] = 1;
        for (std::size_t j = i + 1; j < owner.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            edges.push_back({owner[i], owner[j]});
            rec();
            edges.pop_back();
            used[j] = 0;
        }
        used[i] = 0;
    };
    rec();
}

inline std::size_t matching_count(std::size_t half_edges) {
    std::size_t c = 1;
    for (std::size_t k = half_edges; k > 1; k -= 2) c *= k - 1;
    return c;
}

// Exact law of the component-size multiset of percolate(configuration_model(d), pi).
inline std::map<SizeMultiset, double> direct_percolation_law(const std::vector<std::uint32_t>& d, double pi) {
    std::map<SizeMultiset, double> law;
    std::size_t total = 0;
    for (auto x : d) total += x;
    const double weight = 1.0 / static_cast<double>(matching_count(total));
    for_each_matching(d, [&](const std::vector<percolab::Edge>& edges) {
        const std::size_t m = edges.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            std::vector<percolab::Edge> kept;
            double p = weight;
            for (std::size_t k = 0; k < m; ++k) {
                if (mask >> k & 1) {
                    kept.push_back(edges[k]);
                    p *= pi;
                } else {
                    p *= 1 - pi;
                }
            }
            law[size_multiset(percolab::MultiGraph(d.size(), kept))] += p;
        }
    });
    return law;
}

// Exact law of the same multiset under the explosion construction: keep each
// half-edge with probability sqrt(pi), hang every removed half-edge on a new
// degree-1 vertex, pair uniformly, then delete the added vertices.
inline std::map<SizeMultiset, double> explosion_law(const std::vector<std::uint32_t>& d, double pi) {
    std::map<SizeMultiset, double> law;
    const double q = std::sqrt(pi);
    const std::size_t n = d.size();
    std::size_t total = 0;
    for (auto x : d) total += x;
    const double per_matching = 1.0 / static_cast<double>(matching_count(total));
    std::vector<std::uint32_t> kept(n);
    std::function<void(std::size_t, double)> rec = [&](std::size_t v, double p) {
        if (v == n) {
            std::vector<std::uint32_t> exploded = kept;
            std::size_t reds = 0;
            for (std::size_t u = 0; u < n; ++u) reds += d[u] - kept[u];
            exploded.insert(exploded.end(), reds, 1);
            for_each_matching(exploded, [&](const std::vector<percolab::Edge>& edges) {
                std::vector<percolab::Edge> inside;
                for (const auto& e : edges) {
                    if (e.u < n && e.v < n) inside.push_back(e);
                }
                law[size_multiset(percolab::MultiGraph(n, inside))] += p * per_matching;
            });
            return;
        }
        for (std::uint32_t k = 0; k <= d[v]; ++k) {
            double b = 1;
            for (std::uint32_t i = 0; i < k; ++i) b = b * (d[v] - i) / (i + 1);
            kept[v] = k;
            rec(v + 1, p * b * std::pow(q, k) * std::pow(1 - q, d[v] - k));
        }
    };
    rec(0, 1.0);
    return law;
}

template <class Key>
double total_variation(const std::map<Key, double>& a, const std::map<Key, double>& b) {
    double tv = 0;
    for (const auto& [k, p] : a) {
        const auto it = b.find(k);
        tv += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, p] : b) {
        if (!a.count(k)) tv += p;
    }
    return tv / 2;
}

// Excursion endpoints straight from the definition: grid points i < j at or below
// tol with every interior point above tol. The final open run (ending at the last
// grid point) is reported with complete = false.
struct ExcursionRef {
    std::size_t first, last;
    bool complete;
    bool operator==(const ExcursionRef&) const = default;
    auto operator<=>(const ExcursionRef&) const = default;
};

inline std::vector<double> prefix_min_reflect(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        double m = v[0];
        for (std::size_t j = 0; j <= k; ++j) m = std::min(m, v[j]);
        r[k] = v[k] - m;
    }
    return r;
}

inline std::vector<ExcursionRef> brute_force_excursions(const std::vector<double>& v, double tol) {
    const auto r = prefix_min_reflect(v);
    const std::size_t N = r.size();
    std::vector<ExcursionRef> out;
    for (std::size_t i = 0; i < N; ++i) {
        if (r[i] > tol) continue;
        // The scan stops at the first j back at or below tol, so every interior point is above it.
        for (std::size_t j = i + 1; j < N; ++j) {
            if (r[j] <= tol) {
                if (j >= i + 2) out.push_back({i, j, true});
                break;
            }
            if (j == N - 1) out.push_back({i, j, false});
        }
    }
    return out;
}

}  // namespace oracle
