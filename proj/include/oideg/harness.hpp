#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oideg/adeglp.hpp"
#include "oideg/classical.hpp"
#include "oideg/goodbase.hpp"
#include "oideg/rng.hpp"

#include "json.hpp"

namespace oideg {

// Probability thresholds shared across experiments, kept in one place.
namespace consts {
inline constexpr double kUniformDeviation = 1.0 / 6;   // per-pair deviation target for amplified tests
inline constexpr double kPerCopyError = 1.0 / 12;      // per-copy failure budget
inline constexpr double kGoodSampleProb = 2.0 / 3;     // target fraction of good samples
inline constexpr double kSearchSuccess = 11.0 / 12;    // noisy-search success target
inline constexpr double kComparatorCorrect = 3.0 / 4;  // per-question correctness
}  // namespace consts

// Smallest N with 2*exp(-2*N*eps^2) <= delta.
uint64_t hoeffding_n(double epsilon_dev, double delta);

struct ExperimentConfig {
    std::string kind;  // gt-os | gt-ospp | ahs | parity-hardness | adeg | classical | noisy-search
    uint32_t n = 8;
    uint32_t alpha = 0;  // 0 = per-kind default
    uint32_t t = 0;      // 0 = per-kind default
    uint32_t c = 8;
    int d = -1;          // -1 = formula default
    std::string epsilon = "1/3";
    uint64_t trials = 10000;
    uint32_t r_samples = 30;
    uint64_t seed = 1;
    // adeg-specific
    std::string fn = "parity";
    std::string mode = "full";
    std::string backend = "rational";
    // classical-specific
    std::vector<uint32_t> t_values;
    bool include_timing = true;
    uint32_t workers = 0;  // 0 = env/default

    nlohmann::ordered_json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct ExperimentReport {
    ExperimentConfig config;
    nlohmann::ordered_json stats;
    std::vector<std::string> csv_lines;  // including header
    bool pass = true;
    double wall_ms = 0;

    nlohmann::ordered_json to_json() const;
    std::string csv() const;
    // Writes report.json and data.csv under dir.
    void write(const std::string& dir) const;
};

ExperimentReport run(const ExperimentConfig& config);

uint32_t worker_count(uint32_t requested);  // env OIDEG_WORKERS, else 1

// Fans trials out over workers; each trial derives its own generator, so the
// schedule cannot affect results. fn(trial, rng) -> success bit.
uint64_t count_successes(uint64_t trials, uint64_t seed, const std::string& stream,
                         uint32_t workers, const std::function<bool(uint64_t, Rng&)>& fn);

// ---------------------------------------------------------------------------
// Individual experiments (also used by the acceptance suite)
// ---------------------------------------------------------------------------

struct GtUniformStats {
    uint32_t samples = 0;
    uint32_t good = 0;  // samples with max over pairs of |q - GT| <= 1/6
    double worst_dev = 0;
    uint64_t worst_i = 0, worst_x = 0;
    double frequency() const { return samples ? static_cast<double>(good) / samples : 0.0; }
};

// Exact enumeration of all pairs and copies per sample (criterion of Claim
// 3.1 shape). alpha/t = 0 use the paper defaults for n.
GtUniformStats gt_uniform_experiment(uint32_t n, uint32_t alpha, uint32_t t, uint32_t samples,
                                     uint64_t seed, std::vector<std::string>* csv = nullptr);

struct GtPairStats {
    uint64_t trials = 0;
    uint64_t wrong = 0;
    uint64_t diag_trials = 0;  // x == i runs
    uint64_t diag_wrong = 0;
    double error_rate() const { return trials ? static_cast<double>(wrong) / trials : 0.0; }
};

// Random (i, x, r) triples on a fresh single-copy base per trial.
GtPairStats gt_pair_experiment(uint32_t n, uint32_t alpha, uint64_t trials, uint64_t seed);

struct GtPpPairStats {
    uint64_t trials = 0;
    uint64_t wrong = 0;
    uint64_t max_queries = 0;
    double success_rate() const { return trials ? 1.0 - static_cast<double>(wrong) / trials : 0.0; }
};

GtPpPairStats gt_pp_pair_experiment(uint32_t n, uint32_t c, uint64_t trials, uint64_t seed);

struct AhsStats {
    uint64_t mismatch_trials = 0;
    uint64_t mismatch_accepts = 0;
    uint64_t match_trials = 0;
    uint64_t match_rejects = 0;  // must stay 0
    bool queries_exact = true;   // every nonempty run used exactly alpha
    double mismatch_rate() const {
        return mismatch_trials ? static_cast<double>(mismatch_accepts) / mismatch_trials : 0.0;
    }
};

AhsStats ahs_experiment(uint32_t n, uint32_t alpha, uint64_t mismatch_trials, uint64_t seed);

struct NoisySearchStats {
    uint32_t n = 0;
    uint32_t c = 0;
    uint64_t trials = 0;
    uint64_t successes = 0;
    bool budgets_respected = true;
    uint64_t max_interval_tally = 0;
    uint64_t max_unit_tally = 0;
    double success_rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

NoisySearchStats noisy_search_experiment(uint32_t n, uint32_t c, double p_correct, uint64_t trials,
                                         uint64_t seed);

struct ClassicalRow {
    std::string algorithm;
    uint32_t n = 0;
    uint32_t t = 0;
    uint64_t trials = 0;
    uint64_t successes = 0;
    double lower_bound = 0;   // stated formula
    double alt_bound = 0;     // placement-count variant where the two differ
    double z_score = 0;       // one-sided, against lower_bound
    double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

ClassicalRow classical_experiment(const std::string& algorithm, uint32_t n, uint32_t t,
                                  uint64_t trials, uint64_t seed, uint32_t workers = 1);

struct HsSweepResult {
    uint32_t max_n = 0;
    uint64_t runs = 0;
    uint64_t failures = 0;  // reconstruction != identity (surfaced, not hidden)
    uint64_t budget_violations = 0;
    std::vector<std::string> counterexamples;
};

HsSweepResult hs_exhaustive_sweep(uint32_t max_n, TieBreak tb);

struct BadSubsetRow {
    uint64_t base_hash = 0;
    uint32_t n = 0, m = 0;
    int d = 0;
    uint32_t samples = 0;
    double frequency = 0;
};

BadSubsetRow parity_hardness_experiment(uint32_t n, uint32_t alpha, uint32_t t, int d,
                                        uint32_t samples, uint64_t seed);

}  // namespace oideg
