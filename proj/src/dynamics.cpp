#include "percolab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "percolab/union_find.hpp"

namespace percolab {

double susceptibility(const ComponentDecomposition& dec, int k) {
    if (k < 2) throw std::invalid_argument("susceptibility order must be >= 2");
    if (dec.vertex_count == 0) return 0.0;
    long double sum = 0;
    for (const auto& c : dec.entries) sum += std::pow(static_cast<long double>(c.size), k);
    return static_cast<double>(sum / static_cast<long double>(dec.vertex_count));
}

namespace {

using u128 = unsigned __int128;

// Component sizes with exact power sums sum |C|^k, k = 2, 3, 4.
class PowerSumForest {
public:
    explicit PowerSumForest(std::size_t reserve) : uf_(0) { uf_.reserve(reserve); }

    Vertex add() {
        p2_ += 1;
        p3_ += 1;
        p4_ += 1;
        if (largest_ == 0) {
            largest_ = 1;
            largest_rep_ = static_cast<Vertex>(uf_.element_count());
        }
        return uf_.add();
    }

    void join(Vertex a, Vertex b) {
        const Vertex ra = uf_.find(a), rb = uf_.find(b);
        if (ra == rb) return;
        const u128 x = uf_.size_of_root(ra), y = uf_.size_of_root(rb), z = x + y;
        p2_ += z * z - x * x - y * y;
        p3_ += z * z * z - x * x * x - y * y * y;
        p4_ += z * z * z * z - x * x * x * x - y * y * y * y;
        uf_.unite(ra, rb);
        if (z > largest_) {
            largest_ = static_cast<std::uint64_t>(z);
            largest_rep_ = a;
        }
    }

    std::size_t count() const { return uf_.element_count(); }
    double s(int k) const {
        const u128 p = k == 2 ? p2_ : k == 3 ? p3_ : p4_;
        return static_cast<double>(static_cast<long double>(p) / static_cast<long double>(count()));
    }
    std::uint64_t largest() const { return largest_; }
    Vertex largest_rep() const { return largest_rep_; }
    std::uint64_t size_of(Vertex v) { return uf_.component_size(v); }
    Vertex root(Vertex v) { return uf_.find(v); }

private:
    UnionFind uf_;
    u128 p2_ = 0, p3_ = 0, p4_ = 0;
    std::uint64_t largest_ = 0;
    Vertex largest_rep_ = 0;
};

}  // namespace

SusceptibilityTrack track_growth(const PASpec& spec, double pi, std::size_t n_max,
                                 std::span<const std::size_t> checkpoints, Rng& rng, GrowthTrackOptions options) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("track_growth needs pi in [0, 1]");
    if (n_max < 2) throw std::invalid_argument("track_growth needs n_max >= 2");
    std::vector<std::size_t> marks(checkpoints.begin(), checkpoints.end());
    std::erase_if(marks, [&](std::size_t n) { return n < 2 || n > n_max; });
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    SusceptibilityTrack track;
    track.pi = pi;
    track.points.reserve(marks.size());

    AttachmentProcess proc(spec);
    proc.reserve(n_max);
    PowerSumForest forest(n_max);
    forest.add();
    forest.add();
    for (const auto& e : proc.initial_edges()) {
        if (bernoulli(rng, pi)) forest.join(e.u, e.v);
    }

    double time = 0.0, integral = 0.0;
    std::size_t next_mark = 0;
    bool pending_next = false;
    bool have_rep = false;
    Vertex previous_rep = 0;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t n = 2;; ++n) {
        const double s2 = forest.s(2);
        if (pending_next) {
            track.points.back().s2_next = s2;
            pending_next = false;
        }
        if (next_mark < marks.size() && marks[next_mark] == n) {
            SusceptibilityPoint pt;
            pt.n = n;
            pt.s2 = s2;
            pt.s3 = forest.s(3);
            pt.s4 = options.track_s4 ? forest.s(4) : nan;
            pt.c_max = forest.largest();
            pt.c_one = forest.size_of(0);
            if (options.continuous_time) {
                pt.time = time;
                pt.m_value = static_cast<double>(pt.c_one) * std::exp(-integral);
            }
            const Vertex rep = forest.largest_rep();
            if (have_rep && forest.root(rep) != forest.root(previous_rep)) ++track.argmax_switches;
            previous_rep = rep;
            have_rep = true;
            track.points.push_back(pt);
            pending_next = n < n_max;
            ++next_mark;
        }
        if (n == n_max) break;
        if (options.continuous_time) {
            const double dt = exponential(rng, static_cast<double>(n));
            time += dt;
            integral += (2.0 * pi * pi * s2 + 2.0 * pi) * dt;
        }
        const Vertex v = forest.add();
        for (Vertex u : proc.add_vertex(rng)) {
            if (bernoulli(rng, pi)) forest.join(v, u);
        }
    }
    return track;
}

std::vector<std::size_t> log_checkpoints(std::size_t n_min, std::size_t n_max, std::size_t per_doubling) {
    if (n_min < 2 || n_max < n_min || per_doubling == 0) throw std::invalid_argument("log_checkpoints: bad range");
    std::vector<std::size_t> out;
    for (std::size_t j = 0;; ++j) {
        const double x = static_cast<double>(n_min) * std::exp2(static_cast<double>(j) / static_cast<double>(per_doubling));
        const auto n = static_cast<std::size_t>(std::llround(x));
        if (n > n_max) break;
        if (out.empty() || out.back() != n) out.push_back(n);
    }
    if (out.back() != n_max) out.push_back(n_max);
    return out;
}

double F(double s, double pi) { return 2.0 * pi * pi * s * s + (4.0 * pi - 1.0) * s + 1.0; }

namespace {

// 8 pi^2 - 8 pi + 1, with rounding noise at pi_c snapped to 0. The slope there
// is -4 sqrt 2, so the snap only touches pi within ~2e-15 of pi_c.
double discriminant(double pi) {
    const double d = 8.0 * pi * pi - 8.0 * pi + 1.0;
    return std::abs(d) < 1e-14 ? 0.0 : d;
}

}  // namespace

FixedPointReport fixed_points(double pi) {
    FixedPointReport r;
    if (!(pi > 0.0)) throw std::invalid_argument("fixed_points needs pi > 0");
    const double disc = discriminant(pi);
    if (disc < 0.0 || pi > 0.5) return r;  // supercritical branch
    const double sq = std::sqrt(disc);
    r.real_roots = true;
    r.lambda1 = (1.0 - 4.0 * pi - sq) / (4.0 * pi * pi);
    r.lambda2 = (1.0 - 4.0 * pi + sq) / (4.0 * pi * pi);
    auto derivative = [&](double s) { return 4.0 * pi * pi * s + 4.0 * pi - 1.0; };
    r.lambda1_stable = derivative(r.lambda1) < 0.0;
    r.lambda2_stable = derivative(r.lambda2) < 0.0;
    return r;
}

double s2_infinity(double pi) {
    if (pi == 0.0) return 1.0;
    const double disc = discriminant(pi);
    if (pi < 0.0 || disc < 0.0 || pi > 0.5) throw std::domain_error("s2_infinity needs pi in [0, pi_c]");
    // Smaller root of F in rationalized form; avoids cancellation as pi -> 0.
    return 2.0 / (1.0 - 4.0 * pi + std::sqrt(disc));
}

double alpha(double pi) {
    if (pi < 0.0) throw std::domain_error("alpha needs pi >= 0");
    const double disc = discriminant(pi);
    if (disc < 0.0 || pi > 0.5) throw std::domain_error("alpha needs pi <= pi_c");
    return (1.0 - std::sqrt(disc)) / 2.0;
}

ComponentOfOne component_of_one(const SusceptibilityTrack& track) {
    ComponentOfOne out;
    for (const auto& p : track.points) {
        out.n.push_back(p.n);
        out.size.push_back(p.c_one);
        out.time.push_back(p.time);
        out.m_value.push_back(p.m_value);
    }
    return out;
}

ResidualReport sa_residual_check(std::span<const SusceptibilityTrack> tracks, double pi) {
    if (tracks.size() < 2) throw std::invalid_argument("sa_residual_check needs at least 2 tracks");
    const auto& ref = tracks.front().points;
    ResidualReport r;
    std::vector<double> log_x, log_y;
    for (std::size_t c = 0; c < ref.size(); ++c) {
        const std::size_t n = ref[c].n;
        if (std::isnan(ref[c].s2_next) || std::isnan(ref[c].s4)) continue;
        double sx = 0, sxx = 0, sd = 0, sdd = 0, scorr = 0, s4n = 0;
        for (const auto& t : tracks) {
            if (t.points.size() != ref.size() || t.points[c].n != n) {
                throw std::invalid_argument("sa_residual_check needs identical checkpoints");
            }
            const auto& p = t.points[c];
            const double nn = static_cast<double>(n);
            const double x = (nn + 1.0) * (p.s2_next - p.s2) - F(p.s2, pi);
            const double corr = -2.0 * pi * pi * (p.s3 + p.s4) / nn;
            sx += x;
            sxx += x * x;
            sd += x - corr;
            sdd += (x - corr) * (x - corr);
            scorr += corr;
            s4n += p.s4 / nn;
        }
        const double R = static_cast<double>(tracks.size());
        const double mean_x = sx / R, mean_d = sd / R;
        const double var_x = std::max(0.0, (sxx - R * mean_x * mean_x) / (R - 1.0));
        const double var_d = std::max(0.0, (sdd - R * mean_d * mean_d) / (R - 1.0));
        r.n.push_back(n);
        r.mean_residual.push_back(mean_x);
        r.std_error.push_back(std::sqrt(var_x / R));
        r.mean_correction.push_back(scorr / R);
        r.s4_over_n.push_back(s4n / R);
        const double se_d = std::sqrt(var_d / R);
        if (se_d > 0.0) r.max_z = std::max(r.max_z, std::abs(mean_d) / se_d);
        if (r.s4_over_n.back() > 0.0) {
            r.fitted_k = std::max(r.fitted_k, std::abs(r.mean_correction.back()) / r.s4_over_n.back());
            if (r.mean_correction.back() != 0.0) {
                log_x.push_back(std::log(r.s4_over_n.back()));
                log_y.push_back(std::log(std::abs(r.mean_correction.back())));
            }
        }
    }
    if (log_x.size() >= 2) {
        const double mx = std::accumulate(log_x.begin(), log_x.end(), 0.0) / static_cast<double>(log_x.size());
        const double my = std::accumulate(log_y.begin(), log_y.end(), 0.0) / static_cast<double>(log_y.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < log_x.size(); ++i) {
            sxy += (log_x[i] - mx) * (log_y[i] - my);
            sxx += (log_x[i] - mx) * (log_x[i] - mx);
        }
        r.envelope_slope = sxx > 0 ? sxy / sxx : 0.0;
    }
    return r;
}

}  // namespace percolab
