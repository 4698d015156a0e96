#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "percolab/degrees.hpp"
#include "percolab/generators.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

enum class ModelKind { cm_regular, cm_quantile, cm_iid, nr, nr_multi, chung_lu, grg, pa, ua };

ModelKind parse_model(const std::string& name);
std::string model_name(ModelKind kind);

struct ModelConfig {
    ModelKind kind = ModelKind::cm_regular;
    std::uint32_t degree = 3;  // cm_regular
    PowerLawSpec power;        // cm_quantile, cm_iid, rank-1 models
    PASpec attachment;         // pa, ua (ua uses attachment.m only)
};

// A sampled graph together with what the percolation windows need from it.
struct ModelInstance {
    MultiGraph graph;
    std::optional<DegreeSequence> degrees;  // configuration models only
    double nu = 0;                          // nu_n for static models, 0 for attachment models
};

ModelInstance instantiate(const ModelConfig& model, std::size_t n, Rng& rng);

struct ExperimentConfig {
    ModelConfig model;
    PercolationParams percolation;
    std::vector<std::size_t> n_grid;
    std::size_t replicas = 1;
    std::uint64_t seed = 1;
    bool exclude_isolated = false;
    bool track_s2 = false;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const;  // throws std::invalid_argument
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct RunRecord {
    std::size_t n = 0;
    std::size_t replica = 0;
    std::uint64_t seed = 0;
    double pi = 0;
    std::uint64_t c_max = 0;
    std::uint64_t c_sec = 0;
    std::uint64_t surplus_max = 0;
    double s2 = 0;  // NaN unless tracked
};

// Stream seed for replica r at size n.
std::uint64_t replica_seed(std::uint64_t master, std::size_t n, std::size_t replica);

// One cell of the sweep; a pure function of its arguments.
RunRecord run_replica(const ExperimentConfig& config, std::size_t n, std::size_t replica);

struct ExponentEstimate {
    double slope = 0, intercept = 0, std_error = 0, r_squared = 0;
    std::vector<double> log_n;
    std::vector<double> mean_log;  // mean of log |C_max| per n
};

// Least squares of mean log(size) against log n. Throws std::invalid_argument
// with fewer than 3 distinct n values or an empty group.
ExponentEstimate estimate_exponent(std::span<const std::size_t> n, std::span<const double> sizes);
ExponentEstimate estimate_exponent(std::span<const RunRecord> records);

struct ConcentrationReport {
    double cv = 0;               // coefficient of variation of |C_max| / sqrt n
    double mean_scaled = 0;      // mean |C_max| / sqrt n
    double mean_ratio = 0;       // mean |C_sec| / |C_max|
    bool concentrated = false;   // cv < cv_threshold and mean_ratio < ratio_threshold
};

// Needs at least 10 samples at one n. Throws std::invalid_argument otherwise.
ConcentrationReport concentration_check(std::span<const RunRecord> records, double cv_threshold = 0.25,
                                        double ratio_threshold = 0.2);

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<RunRecord> records;  // sorted by (n, replica)
};

// Cells are split over worker threads; each writes its own slot, so the result
// does not depend on scheduling. `order` permutes execution when non-empty.
ExperimentResult run_experiment(const ExperimentConfig& config, std::span<const std::size_t> order = {});

void write_records_csv(std::ostream& out, const ExperimentResult& result);
nlohmann::json summarize(const ExperimentResult& result);

struct AssertionOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Checks the "assert" block of a config against a finished run. Recognized keys:
// "exponent" {target, tolerance}, "regime" (name, checked at the largest n),
// "concentration" {n, cv, ratio}, "mean_fraction" {n, min, max}.
// Throws std::invalid_argument on unknown keys.
std::vector<AssertionOutcome> evaluate_assertions(const nlohmann::json& spec, const ExperimentResult& result);

inline constexpr int kSchemaVersion = 1;

}  // namespace percolab
