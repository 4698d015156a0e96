#include "percolab/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace percolab {

namespace {

enum class VertexState : std::uint8_t { sleeping, active, dead };

}  // namespace

ExplorationResult explore_cm(const DegreeSequence& d, Rng& rng) {
    if (!d.even_total()) throw std::invalid_argument("exploration needs an even degree total");
    const std::size_t n = d.size();
    const std::size_t total = d.total();

    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + d[v];
    std::vector<Vertex> owner(total);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t h = offset[v]; h < offset[v + 1]; ++h) owner[h] = static_cast<Vertex>(v);
    }
    // Alive half-edges as a swap-remove list with positions.
    std::vector<std::size_t> alive(total), pos(total);
    for (std::size_t h = 0; h < total; ++h) alive[h] = pos[h] = h;
    std::size_t alive_count = total;
    constexpr std::size_t kDead = static_cast<std::size_t>(-1);
    auto kill = [&](std::size_t h) {
        const std::size_t p = pos[h];
        const std::size_t last = alive[--alive_count];
        alive[p] = last;
        pos[last] = p;
        pos[h] = kDead;
    };

    std::vector<VertexState> state(n, VertexState::sleeping);
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    std::vector<Vertex> queue;
    std::size_t head = 0;
    std::int64_t S = 0, active_half_edges = 0;

    ExplorationResult result;
    auto& steps = result.trace.steps;
    steps.reserve(n + total / 2);
    std::vector<Edge> edges;
    edges.reserve(total / 2);

    while (alive_count > 0) {
        if (active_half_edges == 0) {
            // (S1): a vertex chosen proportionally to its degree among sleeping ones.
            const Vertex v = owner[alive[uniform_below(rng, alive_count)]];
            state[v] = VertexState::active;
            queue.clear();
            head = 0;
            queue.push_back(v);
            active_half_edges = d[v];
            S += static_cast<std::int64_t>(d[v]) - 2;
            steps.push_back({S, true, d[v], false, true, v});
            continue;
        }
        // (S2): pair one alive half-edge of the earliest discovered active vertex.
        Vertex u = queue[head];
        while (true) {
            while (cursor[u] < offset[u + 1] && pos[cursor[u]] == kDead) ++cursor[u];
            if (cursor[u] < offset[u + 1]) break;
            state[u] = VertexState::dead;
            u = queue[++head];
        }
        const std::size_t e = cursor[u];
        kill(e);
        const std::size_t f = alive[uniform_below(rng, alive_count)];
        kill(f);
        const Vertex w = owner[f];
        edges.push_back({u, w});
        if (state[w] == VertexState::sleeping) {
            state[w] = VertexState::active;
            queue.push_back(w);
            active_half_edges += static_cast<std::int64_t>(d[w]) - 2;
            S += static_cast<std::int64_t>(d[w]) - 2;
            steps.push_back({S, true, d[w], false, false, w});
        } else {
            active_half_edges -= 2;
            S -= 2;
            steps.push_back({S, false, 0, true, false, kNoVertex});
        }
        if (active_half_edges == 0) result.trace.boundaries.push_back(steps.size());
    }
    result.graph = MultiGraph(n, std::move(edges));
    return result;
}

std::vector<TraceComponent> components_from_trace(const ExplorationTrace& t) {
    std::vector<TraceComponent> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k < t.boundaries.size(); ++k) {
        const std::size_t end = t.boundaries[k];
        if (end <= start || end > t.steps.size()) throw std::invalid_argument("trace boundaries are not increasing");
        if (!t.steps[start].component_start) throw std::invalid_argument("component does not begin with a start step");
        if (t.steps[end - 1].S != -2 * static_cast<std::int64_t>(k + 1)) {
            throw std::invalid_argument("trace boundary does not close at -2k");
        }
        TraceComponent c;
        c.edges = end - start - 1;
        for (std::size_t l = start; l < end; ++l) {
            if (t.steps[l].J) ++c.size;
            else ++c.surplus;
        }
        out.push_back(c);
        start = end;
    }
    if (start != t.steps.size()) throw std::invalid_argument("trace has steps after the last boundary");
    return out;
}

std::vector<std::uint64_t> surplus_from_trace(const ExplorationTrace& t) {
    std::vector<std::uint64_t> out;
    for (const auto& c : components_from_trace(t)) out.push_back(c.surplus);
    return out;
}

bool incremental_process_check(const ExplorationTrace& t) {
    std::int64_t S = 0;
    std::size_t k = 0;  // components closed so far
    for (std::size_t l = 1; l <= t.steps.size(); ++l) {
        const auto& s = t.steps[l - 1];
        if (s.J != (s.d_new > 0)) return false;
        S += static_cast<std::int64_t>(s.d_new) - 2;
        if (S != s.S) return false;
        const std::int64_t floor_k = -2 * static_cast<std::int64_t>(k + 1);
        if (S < floor_k) return false;
        if (S == floor_k) {
            if (k >= t.boundaries.size() || t.boundaries[k] != l) return false;
            ++k;
        }
    }
    return k == t.boundaries.size();
}

bool rewritten_process_check(const ExplorationTrace& t, const DegreeSequence& d) {
    std::int64_t discovered = 0;
    for (std::size_t l = 1; l <= t.steps.size(); ++l) {
        const auto& s = t.steps[l - 1];
        if (s.J) {
            if (s.vertex == kNoVertex || s.vertex >= d.size() || d[s.vertex] != s.d_new) return false;
            discovered += d[s.vertex];
        }
        if (s.S != discovered - 2 * static_cast<std::int64_t>(l)) return false;
    }
    return true;
}

LimitPath rescaled_path(const ExplorationTrace& t, double time_scale, double space_scale) {
    if (!(time_scale > 0.0) || !(space_scale > 0.0)) throw std::invalid_argument("scales must be positive");
    LimitPath p;
    p.dt = 1.0 / time_scale;
    p.values.resize(t.steps.size() + 1);
    for (std::size_t l = 0; l <= t.steps.size(); ++l) p.values[l] = static_cast<double>(t.S(l)) / space_scale;
    return p;
}

std::vector<DriftPoint> drift_estimate(const DegreeSequence& d, std::span<const double> t_grid,
                                       std::size_t replicas, Rng& rng) {
    if (replicas < 2) throw std::invalid_argument("drift_estimate needs at least 2 replicas");
    const double n = static_cast<double>(d.size());
    const double mu = empirical_moment(d, 1);
    const double sigma2 = empirical_moment(d, 2);
    const double sigma3 = empirical_moment(d, 3);
    const double lambda = (d.nu() - 1.0) * std::cbrt(n);
    std::vector<DriftPoint> out(t_grid.size());
    std::vector<double> sum(t_grid.size(), 0.0), sq(t_grid.size(), 0.0);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        out[i].t = t_grid[i];
        const double l = std::ceil(t_grid[i] * std::pow(n, 2.0 / 3.0));
        out[i].l = static_cast<std::size_t>(std::clamp(l, 1.0, n));
        out[i].predicted = (lambda - t_grid[i] * (sigma3 - 2.0 * sigma2) / (mu * mu)) / std::cbrt(n);
    }
    // Position l of a size-biased reordering is the l-th smallest of the clocks
    // E_v / d_v, so only the requested order statistics are selected.
    std::vector<std::pair<double, Vertex>> clocks(d.size());
    for (std::size_t r = 0; r < replicas; ++r) {
        for (Vertex v = 0; v < d.size(); ++v) clocks[v] = {exponential(rng) / d[v], v};
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const auto nth = clocks.begin() + static_cast<std::ptrdiff_t>(out[i].l - 1);
            std::nth_element(clocks.begin(), nth, clocks.end());
            const double x = static_cast<double>(d[nth->second]) - 2.0;
            sum[i] += x;
            sq[i] += x * x;
        }
    }
    const double R = static_cast<double>(replicas);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        out[i].mean = sum[i] / R;
        const double var = std::max(0.0, (sq[i] - R * out[i].mean * out[i].mean) / (R - 1.0));
        out[i].std_error = std::sqrt(var / R);
    }
    return out;
}

void write_trace_csv(std::ostream& out, const ExplorationTrace& t) {
    out << "l,S,J,d_new,surplus_mark\n";
    for (std::size_t l = 1; l <= t.steps.size(); ++l) {
        const auto& s = t.steps[l - 1];
        out << l << ',' << s.S << ',' << int(s.J) << ',' << s.d_new << ',' << int(s.surplus_mark) << '\n';
    }
}

}  // namespace percolab
