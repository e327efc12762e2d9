#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "evoclust/gsemo.hpp"
#include "evoclust/objectives.hpp"
#include "evoclust/oracles.hpp"

namespace evoclust {

struct GeneratorSpec {
    enum class Kind { UniformSquare, GaussianBlobs, Line } kind = Kind::UniformSquare;
    int n = 0;
    int centers = 3;      // gaussian blobs
    double spread = 0.1;  // gaussian blobs
};

GeneratorSpec parse_generator(const std::string& spec);  // e.g. "uniform_square(12)"
Dataset generate_instance(const GeneratorSpec& spec, uint64_t seed);

struct ExperimentConfig {
    ProblemKind problem = ProblemKind::KTmm;
    int k = 2;
    int p = 1;
    double epsilon = 0.1;
    double beta = 1.0;
    std::optional<std::string> instance_path;
    std::optional<GeneratorSpec> generator;
    DistanceKind generated_kind = DistanceKind::Euclidean;
    int trials = 1;
    uint64_t base_seed = 0;
    long budget = 100000;
    StopRule stop;
    bool want_oracle = true;
    bool timing = false;  // measured wall_ms in exports; off keeps them byte-stable
};

struct TrialRecord {
    int trial = 0;
    uint64_t seed = 0;
    std::optional<long> first_hit;
    double cost = 0.0;
    std::optional<double> opt;
    std::optional<double> ratio;
    std::optional<double> fairness;
    long wall_ms = 0;
};

struct Summary {
    double mean_first_hit = 0.0;
    double median_first_hit = 0.0;
    long max_first_hit = 0;
    double max_ratio = 0.0;
    double bound = 0.0;  // iteration_bound for the configuration
    std::string bound_note;
};

struct ExperimentResult {
    std::vector<TrialRecord> records;
    Summary summary;
};

ExperimentResult run_trials(const ExperimentConfig& cfg);

void export_csv(const std::vector<TrialRecord>& records, std::ostream& out);
std::string records_to_json(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> records_from_json(const std::string& json_text);

// Canned theorem experiments. Each check is a (name, pass) pair; metrics lines
// are human-readable context printed by the CLI.
struct VerifyReport {
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> metrics;
    std::vector<TrialRecord> records;
    bool pass() const {
        for (const auto& [_, ok] : checks)
            if (!ok) return false;
        return true;
    }
};

VerifyReport verify_theorem(int which /* 1..5 */, uint64_t base_seed);

}  // namespace evoclust
