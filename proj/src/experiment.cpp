#include "percolab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "percolab/dynamics.hpp"
#include "percolab/graph.hpp"

namespace percolab {

using nlohmann::json;

namespace {

const std::vector<std::pair<ModelKind, std::string>>& model_names() {
    static const std::vector<std::pair<ModelKind, std::string>> names = {
        {ModelKind::cm_regular, "cm-regular"}, {ModelKind::cm_quantile, "cm-quantile"},
        {ModelKind::cm_iid, "cm-iid"},         {ModelKind::nr, "nr"},
        {ModelKind::nr_multi, "nr-multi"},     {ModelKind::chung_lu, "cl"},
        {ModelKind::grg, "grg"},               {ModelKind::pa, "pa"},
        {ModelKind::ua, "ua"},
    };
    return names;
}

bool is_cm(ModelKind k) {
    return k == ModelKind::cm_regular || k == ModelKind::cm_quantile || k == ModelKind::cm_iid;
}
bool is_rank1(ModelKind k) {
    return k == ModelKind::nr || k == ModelKind::nr_multi || k == ModelKind::chung_lu || k == ModelKind::grg;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ModelKind parse_model(const std::string& name) {
    for (const auto& [k, s] : model_names()) {
        if (s == name) return k;
    }
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::string model_name(ModelKind kind) {
    for (const auto& [k, s] : model_names()) {
        if (k == kind) return s;
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (n_grid.empty()) throw std::invalid_argument("n_grid is empty");
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("n_grid must be strictly increasing");
    }
    if (n_grid.front() < 2) throw std::invalid_argument("n_grid entries must be >= 2");
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    const Window w = percolation.window;
    if (w == Window::fixed && !(percolation.pi >= 0.0 && percolation.pi <= 1.0)) {
        throw std::invalid_argument("percolation.pi must lie in [0, 1]");
    }
    if (w != Window::fixed && w != Window::single_edge && !is_cm(model.kind)) {
        throw std::invalid_argument("windows fin3/heavy/tau23 need a configuration-model degree sequence");
    }
    if (w == Window::single_edge && !is_rank1(model.kind) && !is_cm(model.kind)) {
        throw std::invalid_argument("single-edge window needs a static model");
    }
    if (model.kind == ModelKind::cm_regular && model.degree < 1) throw std::invalid_argument("degree must be >= 1");
    if (model.kind == ModelKind::pa || model.kind == ModelKind::ua) {
        PASpec spec = model.attachment;
        if (model.kind == ModelKind::ua) {
            spec.a = 0.0;
            spec.delta = 1.0;
        }
        spec.validate();
    } else if (model.kind != ModelKind::cm_regular) {
        model.power.validate();
    }
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    const json& m = j.at("model");
    c.model.kind = parse_model(m.at("kind").get<std::string>());
    c.model.degree = m.value("degree", 3u);
    c.model.power.tau = m.value("tau", 3.5);
    c.model.power.c_f = m.value("c_f", 1.0);
    c.model.attachment.m = m.value("m", 2u);
    c.model.attachment.delta = m.value("delta", 0.0);
    c.model.attachment.a = m.value("a", 1.0);
    if (m.contains("init")) {
        const json& init = m.at("init");
        c.model.attachment.init = InitialGraph{init.value("between", 0u), init.value("loops_first", 0u),
                                               init.value("loops_second", 0u)};
    }
    if (j.contains("percolation")) {
        const json& p = j.at("percolation");
        c.percolation.window = parse_window(p.value("window", std::string("fixed")));
        c.percolation.pi = p.value("pi", 1.0);
        c.percolation.lambda = p.value("lambda", 0.0);
        c.percolation.tau = p.value("tau", c.model.power.tau);
    } else {
        c.percolation.tau = c.model.power.tau;
    }
    c.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    c.replicas = j.value("replicas", std::size_t{1});
    c.seed = j.value("seed", std::uint64_t{1});
    c.exclude_isolated = j.value("exclude_isolated", false);
    c.track_s2 = j.value("track_s2", false);
    c.threads = j.value("threads", 0u);
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json model = {{"kind", model_name(c.model.kind)}};
    if (c.model.kind == ModelKind::cm_regular) model["degree"] = c.model.degree;
    if (is_rank1(c.model.kind) || c.model.kind == ModelKind::cm_quantile || c.model.kind == ModelKind::cm_iid) {
        model["tau"] = c.model.power.tau;
        model["c_f"] = c.model.power.c_f;
    }
    if (c.model.kind == ModelKind::pa || c.model.kind == ModelKind::ua) {
        model["m"] = c.model.attachment.m;
        if (c.model.kind == ModelKind::pa) {
            model["delta"] = c.model.attachment.delta;
            model["a"] = c.model.attachment.a;
        }
        const InitialGraph g = c.model.attachment.initial_graph();
        model["init"] = {{"between", g.between}, {"loops_first", g.loops_first}, {"loops_second", g.loops_second}};
    }
    json perc = {{"window", window_name(c.percolation.window)}};
    if (c.percolation.window == Window::fixed) perc["pi"] = c.percolation.pi;
    else perc["lambda"] = c.percolation.lambda;
    if (c.percolation.window == Window::heavy || c.percolation.window == Window::single_edge) {
        perc["tau"] = c.percolation.tau;
    }
    return {{"model", model},
            {"percolation", perc},
            {"n_grid", c.n_grid},
            {"replicas", c.replicas},
            {"seed", c.seed},
            {"exclude_isolated", c.exclude_isolated},
            {"track_s2", c.track_s2}};
}

std::uint64_t replica_seed(std::uint64_t master, std::size_t n, std::size_t replica) {
    return derive_seed(master, n, replica);
}

ModelInstance instantiate(const ModelConfig& model, std::size_t n, Rng& rng) {
    ModelInstance inst;
    if (is_cm(model.kind)) {
        DegreeSequence d = model.kind == ModelKind::cm_regular
                               ? DegreeSequence(fix_parity(std::vector<std::uint32_t>(n, model.degree)))
                           : model.kind == ModelKind::cm_quantile ? quantile_degrees(n, model.power)
                                                                  : iid_degrees_coupled(n, model.power, rng);
        inst.graph = configuration_model(d, rng);
        inst.nu = nu_n(d);
        inst.degrees = std::move(d);
    } else if (is_rank1(model.kind)) {
        const WeightSequence w = power_law_weights(n, model.power);
        double w2 = 0;
        for (double x : w.values()) w2 += x * x;
        inst.nu = w2 / w.total();
        switch (model.kind) {
            case ModelKind::nr: inst.graph = nr_graph(w, rng); break;
            case ModelKind::nr_multi: inst.graph = nr_multigraph(w, rng); break;
            case ModelKind::chung_lu: inst.graph = chung_lu(w, rng); break;
            default: inst.graph = grg(w, rng); break;
        }
    } else {
        PASpec spec = model.attachment;
        if (model.kind == ModelKind::ua) {
            spec.a = 0.0;
            spec.delta = 1.0;
        }
        inst.graph = preferential_attachment(n, spec, rng).graph;
    }
    return inst;
}

RunRecord run_replica(const ExperimentConfig& config, std::size_t n, std::size_t replica) {
    RunRecord rec;
    rec.n = n;
    rec.replica = replica;
    rec.seed = replica_seed(config.seed, n, replica);
    rec.s2 = std::numeric_limits<double>::quiet_NaN();
    Rng rng(rec.seed);

    ModelInstance inst = instantiate(config.model, n, rng);
    rec.pi = inst.degrees ? config.percolation.resolve(*inst.degrees)
             : inst.nu > 0 ? config.percolation.resolve(n, inst.nu)
                           : config.percolation.pi;
    const MultiGraph& g = inst.graph;
    const MultiGraph kept = percolate(g, rec.pi, rng);
    const ComponentOptions opts{config.exclude_isolated};
    if (config.track_s2) {
        const ComponentDecomposition dec = components(kept, opts);
        rec.c_max = dec.largest();
        rec.c_sec = dec.second();
        rec.surplus_max = dec.entries.empty() ? 0 : dec.entries[0].surplus;
        rec.s2 = susceptibility(dec, 2);
    } else {
        const TopComponents top = top_components(kept, opts);
        rec.c_max = top.largest;
        rec.c_sec = top.second;
        rec.surplus_max = top.largest_surplus;
    }
    return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::span<const std::size_t> order) {
    config.validate();
    const std::size_t R = config.replicas;
    const std::size_t cells = config.n_grid.size() * R;
    if (!order.empty() && order.size() != cells) throw std::invalid_argument("execution order must cover every cell");

    ExperimentResult result;
    result.config = config;
    result.records.resize(cells);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells) return;
            const std::size_t cell = order.empty() ? i : order[i];
            try {
                result.records[cell] = run_replica(config, config.n_grid[cell / R], cell % R);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(cells);
            }
        }
    };
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return result;
}

ExponentEstimate estimate_exponent(std::span<const std::size_t> n, std::span<const double> sizes) {
    if (n.size() != sizes.size()) throw std::invalid_argument("estimate_exponent: size mismatch");
    std::map<std::size_t, std::pair<double, std::size_t>> groups;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(sizes[i] > 0.0)) throw std::invalid_argument("estimate_exponent needs positive sizes");
        auto& g = groups[n[i]];
        g.first += std::log(sizes[i]);
        ++g.second;
    }
    if (groups.size() < 3) throw std::invalid_argument("estimate_exponent needs at least 3 distinct n");
    ExponentEstimate est;
    for (const auto& [nn, g] : groups) {
        est.log_n.push_back(std::log(static_cast<double>(nn)));
        est.mean_log.push_back(g.first / static_cast<double>(g.second));
    }
    const double k = static_cast<double>(est.log_n.size());
    const double mx = std::accumulate(est.log_n.begin(), est.log_n.end(), 0.0) / k;
    const double my = std::accumulate(est.mean_log.begin(), est.mean_log.end(), 0.0) / k;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < est.log_n.size(); ++i) {
        const double dx = est.log_n[i] - mx, dy = est.mean_log[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < est.log_n.size(); ++i) {
        const double r = est.mean_log[i] - (est.intercept + est.slope * est.log_n[i]);
        ssr += r * r;
    }
    est.std_error = std::sqrt(ssr / (k - 2.0) / sxx);
    est.r_squared = syy > 0 ? 1.0 - ssr / syy : 1.0;
    return est;
}

ExponentEstimate estimate_exponent(std::span<const RunRecord> records) {
    std::vector<std::size_t> n;
    std::vector<double> sizes;
    for (const auto& r : records) {
        n.push_back(r.n);
        sizes.push_back(static_cast<double>(r.c_max));
    }
    return estimate_exponent(n, sizes);
}

ConcentrationReport concentration_check(std::span<const RunRecord> records, double cv_threshold,
                                        double ratio_threshold) {
    if (records.size() < 10) throw std::invalid_argument("concentration_check needs at least 10 replicas");
    const std::size_t n = records.front().n;
    double sum = 0, sq = 0, ratio = 0;
    for (const auto& r : records) {
        if (r.n != n) throw std::invalid_argument("concentration_check needs samples at a single n");
        const double x = static_cast<double>(r.c_max) / std::sqrt(static_cast<double>(n));
        sum += x;
        sq += x * x;
        ratio += r.c_max ? static_cast<double>(r.c_sec) / static_cast<double>(r.c_max) : 0.0;
    }
    const double R = static_cast<double>(records.size());
    ConcentrationReport rep;
    rep.mean_scaled = sum / R;
    const double var = std::max(0.0, (sq - R * rep.mean_scaled * rep.mean_scaled) / (R - 1.0));
    rep.cv = rep.mean_scaled > 0 ? std::sqrt(var) / rep.mean_scaled : 0.0;
    rep.mean_ratio = ratio / R;
    rep.concentrated = rep.cv < cv_threshold && rep.mean_ratio < ratio_threshold;
    return rep;
}

std::vector<AssertionOutcome> evaluate_assertions(const json& spec, const ExperimentResult& result) {
    std::vector<AssertionOutcome> out;
    const auto& recs = result.records;
    auto at_n = [&](std::size_t n) {
        std::vector<RunRecord> sel;
        for (const auto& r : recs) {
            if (r.n == n) sel.push_back(r);
        }
        if (sel.empty()) throw std::invalid_argument("assertion refers to n not in the grid");
        return sel;
    };
    const std::size_t n_last = result.config.n_grid.back();
    char buf[160];
    for (const auto& [key, value] : spec.items()) {
        AssertionOutcome a;
        a.name = key;
        if (key == "exponent") {
            const double target = value.at("target").get<double>();
            const double tol = value.at("tolerance").get<double>();
            const ExponentEstimate e = estimate_exponent(recs);
            a.passed = std::abs(e.slope - target) <= tol;
            std::snprintf(buf, sizeof buf, "slope %.4f (se %.4f), target %.4f +- %.4f", e.slope, e.std_error, target,
                          tol);
        } else if (key == "regime") {
            const std::string want = value.get<std::string>();
            std::vector<ComponentPairSample> samples;
            for (const auto& r : at_n(n_last)) samples.push_back({r.c_max, r.c_sec});
            const RegimeReport rep = regime_diagnostic(samples);
            a.passed = regime_name(rep.regime) == want;
            std::snprintf(buf, sizeof buf, "%s at n=%zu (mid mass %.3f, sd %.3f), expected %s",
                          regime_name(rep.regime).c_str(), n_last, rep.fraction_mid, rep.stddev, want.c_str());
        } else if (key == "concentration") {
            const std::size_t n = value.value("n", n_last);
            const ConcentrationReport rep =
                concentration_check(at_n(n), value.value("cv", 0.25), value.value("ratio", 0.2));
            const bool expect = value.value("expect", true);
            a.passed = rep.concentrated == expect;
            std::snprintf(buf, sizeof buf, "cv %.4f, mean ratio %.4f at n=%zu", rep.cv, rep.mean_ratio, n);
        } else if (key == "mean_fraction") {
            const std::size_t n = value.value("n", n_last);
            double sum = 0;
            const auto sel = at_n(n);
            for (const auto& r : sel) sum += static_cast<double>(r.c_max) / static_cast<double>(n);
            const double mean = sum / static_cast<double>(sel.size());
            const double lo = value.value("min", 0.0), hi = value.value("max", 1.0);
            a.passed = mean >= lo && mean <= hi;
            std::snprintf(buf, sizeof buf, "mean |C_max|/n %.5f at n=%zu, allowed [%.5f, %.5f]", mean, n, lo, hi);
        } else {
            throw std::invalid_argument("unknown assertion '" + key + "'");
        }
        a.detail = buf;
        out.push_back(std::move(a));
    }
    return out;
}

void write_records_csv(std::ostream& out, const ExperimentResult& result) {
    out << "n,replica,seed,pi,c_max,c_sec,surplus_max,s2\n";
    for (const auto& r : result.records) {
        out << r.n << ',' << r.replica << ',' << r.seed << ',' << format_double(r.pi) << ',' << r.c_max << ','
            << r.c_sec << ',' << r.surplus_max << ',' << format_double(r.s2) << '\n';
    }
}

json summarize(const ExperimentResult& result) {
    json per_n = json::array();
    std::map<std::size_t, std::vector<const RunRecord*>> groups;
    for (const auto& r : result.records) groups[r.n].push_back(&r);
    for (const auto& [n, recs] : groups) {
        double cmax = 0, csec = 0, logc = 0;
        std::vector<ComponentPairSample> samples;
        for (const RunRecord* r : recs) {
            cmax += static_cast<double>(r->c_max);
            csec += static_cast<double>(r->c_sec);
            logc += r->c_max ? std::log(static_cast<double>(r->c_max)) : 0.0;
            samples.push_back({r->c_max, r->c_sec});
        }
        const double k = static_cast<double>(recs.size());
        json entry = {{"n", n},
                      {"pi", recs.front()->pi},
                      {"replicas", recs.size()},
                      {"mean_c_max", cmax / k},
                      {"mean_c_sec", csec / k},
                      {"mean_log_c_max", logc / k}};
        if (samples.size() >= 2) {
            const RegimeReport reg = regime_diagnostic(samples);
            entry["regime"] = regime_name(reg.regime);
            entry["ratio_mean"] = reg.mean;
            entry["ratio_sd"] = reg.stddev;
            entry["ratio_mass_mid"] = reg.fraction_mid;
        }
        per_n.push_back(entry);
    }
    json out = {{"schema_version", kSchemaVersion},
                {"config", config_to_json(result.config)},
                {"seed_derivation", "splitmix64(master, n, replica)"},
                {"per_n", per_n}};
    if (groups.size() >= 3) {
        try {
            const ExponentEstimate e = estimate_exponent(result.records);
            out["exponent"] = {{"slope", e.slope}, {"intercept", e.intercept}, {"std_error", e.std_error},
                               {"r_squared", e.r_squared}};
        } catch (const std::invalid_argument&) {
            out["exponent"] = nullptr;  // some replica had an empty largest component
        }
    }
    return out;
}

}  // namespace percolab
