// percolab: command-line front end for the simulation library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "percolab/dynamics.hpp"
#include "percolab/experiment.hpp"
#include "percolab/exploration.hpp"
#include "percolab/io.hpp"
#include "percolab/limit.hpp"
#include "percolab/log.hpp"

namespace fs = std::filesystem;
using namespace percolab;

namespace {

struct GenOptions {
    std::string model = "cm";
    std::string degrees = "regular";
    std::size_t n = 1000;
    std::uint32_t degree = 3;
    double tau = 3.5, c_f = 1.0;
    std::uint32_t m = 2;
    double delta = 0.0, a = 1.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string sequence;
};

struct PercOptions {
    std::string in;
    double pi = -1;
    std::string window;
    double lambda = 0, tau = 0;
    std::uint64_t seed = 1;
    std::string out;
    bool exclude_isolated = false;
};

struct ExploreOptions {
    std::string degrees_file;
    std::size_t n = 100;
    std::uint32_t degree = 3;
    std::uint64_t seed = 1;
    std::string out;
};

struct LimitOptions {
    std::string kind = "bm";
    double mu = 3, kappa = 6, lambda = 0, nu = 2;
    double tau = 3.5, c_f = 1.0;
    double T = 10, dt = 1e-3;
    std::size_t K = 1000;
    std::size_t V = 0;
    double mark_scale = 0;
    std::uint64_t seed = 1;
    std::string out;
};

struct DynOptions {
    std::string model = "ua";
    std::string checkpoints = "log";
    double pi = 0.1;
    std::uint32_t m = 2;
    double delta = 1.0, a = 0.0;
    std::size_t n = 1 << 16;
    std::size_t per_doubling = 1;
    std::uint64_t seed = 1;
    std::string out;
};

struct RunOptions {
    std::string config;
    std::string out_dir = ".";
    bool assert_checks = false;
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    return file;
}

int cmd_gen(const GenOptions& o) {
    ModelConfig model;
    if (o.model == "cm") model.kind = parse_model("cm-" + o.degrees);
    else if (o.model == "nrmulti") model.kind = ModelKind::nr_multi;
    else model.kind = parse_model(o.model);
    model.degree = o.degree;
    model.power = {o.tau, o.c_f};
    model.attachment.m = o.m;
    model.attachment.delta = o.delta;
    model.attachment.a = o.a;
    if (!o.sequence.empty() && (model.kind == ModelKind::pa || model.kind == ModelKind::ua)) {
        throw std::invalid_argument("--sequence needs a static model");
    }
    Rng rng(o.seed);
    const ModelInstance inst = instantiate(model, o.n, rng);
    std::ofstream file;
    write_edge_list(open_output(o.out, file), inst.graph);
    if (!o.sequence.empty()) {
        std::vector<double> values;
        if (inst.degrees) {
            for (std::uint32_t d : inst.degrees->values()) values.push_back(d);
        } else {
            const WeightSequence w = power_law_weights(o.n, model.power);
            values.assign(w.values().begin(), w.values().end());
        }
        std::ofstream seq(o.sequence);
        if (!seq) throw std::runtime_error("cannot open " + o.sequence + " for writing");
        write_values(seq, values);
        nlohmann::json manifest = {{"model", model_name(model.kind)},
                                   {"sequence", inst.degrees ? "degrees" : "weights"},
                                   {"n", o.n},
                                   {"seed", o.seed}};
        if (model.kind == ModelKind::cm_regular) {
            manifest["degree"] = o.degree;
        } else {
            manifest["tau"] = o.tau;
            manifest["c_f"] = o.c_f;
        }
        std::ofstream mf(o.sequence + ".json");
        if (!mf) throw std::runtime_error("cannot open " + o.sequence + ".json for writing");
        mf << manifest.dump(2) << '\n';
    }
    return 0;
}

int cmd_perc(const PercOptions& o) {
    const MultiGraph g = load_edge_list(o.in);
    PercolationParams params;
    if (!o.window.empty()) {
        params.window = parse_window(o.window);
        params.lambda = o.lambda;
        params.tau = o.tau;
    } else {
        if (o.pi < 0) throw std::invalid_argument("give --pi or --window");
        params.pi = o.pi;
    }
    const double pi = params.window == Window::fixed ? params.resolve(g.vertex_count(), 0.0)
                                                     : params.resolve(g.vertex_count(), nu_n(g.degrees()));
    Rng rng(o.seed);
    const MultiGraph kept = percolate(g, pi, rng);
    if (!o.out.empty()) save_edge_list(o.out, kept);
    const ComponentDecomposition dec = components(kept, {o.exclude_isolated});
    const nlohmann::json record = {{"pi_used", pi},
                                   {"n", g.vertex_count()},
                                   {"seed", o.seed},
                                   {"edges_kept", kept.edge_count()},
                                   {"c_max", dec.largest()},
                                   {"c_sec", dec.second()},
                                   {"surplus_max", dec.entries.empty() ? 0 : dec.entries[0].surplus}};
    std::cout << record.dump() << '\n';
    return 0;
}

int cmd_explore(const ExploreOptions& o) {
    std::vector<std::uint32_t> d;
    if (!o.degrees_file.empty()) {
        std::ifstream in(o.degrees_file);
        if (!in) throw std::runtime_error("cannot open " + o.degrees_file);
        for (double x : read_values(in)) d.push_back(static_cast<std::uint32_t>(x));
    } else {
        d.assign(o.n, o.degree);
    }
    Rng rng(o.seed);
    const ExplorationResult r = explore_cm(DegreeSequence(fix_parity(std::move(d))), rng);
    std::ofstream file;
    write_trace_csv(open_output(o.out, file), r.trace);
    return 0;
}

void write_path_csv(std::ostream& out, const LimitPath& p) {
    const LimitPath refl = reflect(p);
    out.precision(12);
    out << "t,value,reflected\n";
    for (std::size_t k = 0; k < p.size(); ++k) {
        out << p.time(k) << ',' << p.values[k] << ',' << refl.values[k] << '\n';
    }
}

nlohmann::json excursion_summary(const LimitPath& p, double tol, double mark_scale, Rng& rng) {
    ExcursionSet set = excursions(p, tol);
    if (mark_scale > 0) assign_marks(set, poisson_marks(reflect(p), mark_scale, rng));
    nlohmann::json list = nlohmann::json::array();
    for (const Excursion& e : set.items) {
        list.push_back({{"left", e.left}, {"right", e.right}, {"length", e.length}, {"marks", e.marks},
                        {"complete", e.complete}});
    }
    return {{"count", set.items.size()}, {"tolerance", tol}, {"excursions", list}};
}

int cmd_limit(const LimitOptions& o) {
    Rng rng(o.seed);
    std::ofstream file;
    nlohmann::json summary = {{"process", o.kind}, {"seed", o.seed}};
    if (o.kind == "bm" || o.kind == "levy34" || o.kind == "levy23") {
        LimitPath path;
        double tol = 1e-9;
        if (o.kind == "bm") {
            path = simulate_bm_parabolic(o.mu, o.kappa, o.lambda, o.T, o.dt, rng);
            tol = default_excursion_tol(o.dt, std::abs(o.lambda) + o.kappa * o.T / (o.mu * o.mu * o.mu));
        } else {
            const ThetaSequence theta = power_law_theta(o.tau, o.c_f, o.K);
            const JumpSimulation sim = o.kind == "levy34"
                                           ? simulate_thinned_levy(theta, o.mu, o.nu, o.lambda, o.T, o.dt, rng)
                                           : simulate_tau23_process(theta, o.mu, o.lambda, o.T, o.dt, rng);
            path = sim.path;
            summary["truncation"] = o.K;
            summary["truncation_bound"] = sim.truncation_bound;
        }
        if (!o.out.empty()) write_path_csv(open_output(o.out, file), path);
        summary.update(excursion_summary(path, tol, o.mark_scale, rng));
    } else if (o.kind == "tinygiant") {
        TinyGiantParams p{o.lambda, o.tau, o.c_f, o.mu};
        const ZetaLimit z = zeta_limit(p);
        summary["lambda"] = o.lambda;
        summary["lambda_c"] = lambda_c(o.tau, o.c_f, o.mu);
        summary["zeta"] = z.zeta;
        summary["zeta_truncation"] = z.a;
        summary["zeta_converged"] = z.converged;
        if (o.V > 0) {
            // Truncation sensitivity: the same statistics on half as many vertices.
            nlohmann::json graphs = nlohmann::json::array();
            for (std::size_t V : {(o.V + 1) / 2, o.V}) {
                const ComponentDecomposition dec = components(tiny_giant_graph(p, V, rng), {true});
                graphs.push_back({{"vertices", V}, {"c_max", dec.largest()}, {"c_sec", dec.second()}});
            }
            summary["graph"] = graphs;
        }
    } else {
        throw std::invalid_argument("unknown process '" + o.kind + "'");
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_dyn(const DynOptions& o) {
    PASpec spec;
    spec.m = o.m;
    spec.delta = o.model == "ua" ? 1.0 : o.delta;
    spec.a = o.model == "ua" ? 0.0 : o.a;
    Rng rng(o.seed);
    std::vector<std::size_t> checkpoints;
    if (o.checkpoints == "log") {
        checkpoints = log_checkpoints(2, o.n, o.per_doubling);
    } else if (o.checkpoints == "all") {
        for (std::size_t k = 2; k <= o.n; ++k) checkpoints.push_back(k);
    } else {
        throw std::invalid_argument("--checkpoints must be log or all");
    }
    const SusceptibilityTrack track = track_growth(spec, o.pi, o.n, checkpoints, rng);
    std::ofstream file;
    std::ostream& out = open_output(o.out, file);
    out.precision(12);
    out << "n,s2,s3,Cmax,C1\n";
    for (const auto& pt : track.points) {
        out << pt.n << ',' << pt.s2 << ',' << pt.s3 << ',' << pt.c_max << ',' << pt.c_one << '\n';
    }
    if (o.model == "ua" && o.m == 2 && o.pi <= ua_pi_c(2)) {
        std::cerr << "s2_infinity " << s2_infinity(o.pi) << "\nalpha " << alpha(o.pi) << '\n';
    }
    std::cerr << "argmax_switches " << track.argmax_switches << '\n';
    return 0;
}

int cmd_run(const RunOptions& o) {
    std::ifstream in(o.config);
    if (!in) throw std::runtime_error("cannot open config " + o.config);
    const nlohmann::json j = nlohmann::json::parse(in);
    const ExperimentConfig config = config_from_json(j);
    const ExperimentResult result = run_experiment(config);

    fs::create_directories(o.out_dir);
    std::ofstream csv(fs::path(o.out_dir) / "records.csv");
    if (!csv) throw std::runtime_error("cannot write records.csv in " + o.out_dir);
    write_records_csv(csv, result);

    nlohmann::json summary = summarize(result);
    int code = 0;
    if (o.assert_checks) {
        const auto outcomes = evaluate_assertions(j.value("assert", nlohmann::json::object()), result);
        nlohmann::json list = nlohmann::json::array();
        for (const auto& a : outcomes) {
            std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << ": " << a.detail << '\n';
            list.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
            if (!a.passed) code = 2;
        }
        summary["assertions"] = list;
    }
    std::ofstream js(fs::path(o.out_dir) / "summary.json");
    js << summary.dump(2) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Percolation on random graphs: generators, explorations, limit processes, experiments"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress warnings");

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Sample a graph and write it as an edge list");
    g->add_option("model", gen.model, "cm|nr|nrmulti|cl|grg|pa|ua")->required();
    g->add_option("--degrees", gen.degrees, "Degree sequence for cm: regular|quantile|iid");
    g->add_option("-n,--n", gen.n, "Number of vertices");
    g->add_option("--degree", gen.degree, "Degree for cm-regular");
    g->add_option("--tau", gen.tau, "Power-law exponent");
    g->add_option("--cf", gen.c_f, "Power-law scale c_F");
    g->add_option("-m,--m", gen.m, "Edges per arriving vertex");
    g->add_option("--delta", gen.delta, "Attachment shift");
    g->add_option("-a,--a", gen.a, "Degree weight in the attachment rule");
    g->add_option("--seed", gen.seed);
    g->add_option("-o,--out", gen.out, "Output file (default stdout)");
    g->add_option("--sequence", gen.sequence,
                  "Also write the degree or weight sequence here, one value per line, with a JSON manifest at <path>.json");

    PercOptions perc;
    auto* p = app.add_subcommand("perc", "Bond-percolate an edge list and report its components");
    p->add_option("input", perc.in, "Edge-list file")->required();
    auto* pi_opt = p->add_option("--pi", perc.pi, "Retention probability")->check(CLI::Range(0.0, 1.0));
    auto* win_opt = p->add_option("--window", perc.window, "fin3|heavy|tau23|single, scaled from the graph's nu_n");
    pi_opt->excludes(win_opt);
    p->add_option("--lambda", perc.lambda, "Window parameter");
    p->add_option("--tau", perc.tau, "Exponent for the heavy and single windows");
    p->add_option("--seed", perc.seed);
    p->add_option("-o,--out", perc.out, "Write the percolated edge list here");
    p->add_flag("--exclude-isolated", perc.exclude_isolated);

    ExploreOptions ex;
    auto* e = app.add_subcommand("explore", "Run the configuration-model exploration and write its trace");
    e->add_option("--degrees", ex.degrees_file, "File with one degree per line");
    e->add_option("-n,--n", ex.n, "Vertices for a regular sequence");
    e->add_option("--degree", ex.degree);
    e->add_option("--seed", ex.seed);
    e->add_option("-o,--out", ex.out);

    LimitOptions lim;
    auto* l = app.add_subcommand("limit", "Simulate a scaling-limit process");
    l->add_option("process", lim.kind, "bm|levy34|levy23|tinygiant")->required();
    l->add_option("--mu", lim.mu);
    l->add_option("--kappa", lim.kappa);
    l->add_option("--nu", lim.nu);
    l->add_option("--lambda", lim.lambda);
    l->add_option("--tau", lim.tau);
    l->add_option("--cf", lim.c_f);
    l->add_option("-T,--horizon", lim.T);
    l->add_option("--dt", lim.dt);
    l->add_option("-K,--truncation", lim.K, "Number of jump clocks kept");
    l->add_option("-V,--vertices", lim.V, "tinygiant: also sample the graph on V vertices");
    l->add_option("--marks", lim.mark_scale, "Poisson mark intensity per unit area under the reflected path");
    l->add_option("--seed", lim.seed);
    l->add_option("-o,--out", lim.out, "CSV file for the sampled path (t, value, reflected)");

    DynOptions dyn;
    auto* d = app.add_subcommand("dyn", "Track susceptibilities of a growing percolated attachment graph");
    d->add_option("--model", dyn.model, "ua|pa")->check(CLI::IsMember({"ua", "pa"}));
    d->add_option("--pi", dyn.pi)->check(CLI::Range(0.0, 1.0));
    d->add_option("-m,--m", dyn.m);
    d->add_option("--delta", dyn.delta);
    d->add_option("-a,--a", dyn.a);
    d->add_option("--nmax", dyn.n, "Final number of vertices");
    d->add_option("--checkpoints", dyn.checkpoints, "log (powers of two) or all");
    d->add_option("--per-doubling", dyn.per_doubling, "Log checkpoints per doubling");
    d->add_option("--seed", dyn.seed);
    d->add_option("-o,--out", dyn.out);

    RunOptions run;
    auto* r = app.add_subcommand("run", "Run an experiment described by a JSON config");
    r->add_option("--config", run.config)->required()->check(CLI::ExistingFile);
    r->add_option("--out-dir", run.out_dir);
    r->add_flag("--assert", run.assert_checks, "Exit with status 2 if any configured check fails");

    CLI11_PARSE(app, argc, argv);
    set_warnings_enabled(!quiet);
    try {
        if (*g) return cmd_gen(gen);
        if (*p) return cmd_perc(perc);
        if (*e) return cmd_explore(ex);
        if (*l) return cmd_limit(lim);
        if (*d) return cmd_dyn(dyn);
        if (*r) return cmd_run(run);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
