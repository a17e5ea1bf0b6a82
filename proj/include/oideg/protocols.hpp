#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "oideg/oracle.hpp"
#include "oideg/rng.hpp"

namespace oideg {

// Raised when a base lacks the slots a protocol needs (malformed structure),
// as opposed to bad caller arguments.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Per-copy deterministic tests
// ---------------------------------------------------------------------------

// One run of the segment binary-search comparison against comparand i using
// the strings of one package copy.
struct GtRun {
    uint32_t copy = 0;
    struct Step {
        uint32_t lo, mid, hi;
        bool equal;
    };
    std::vector<Step> transcript;
    uint32_t final_pos = 0;  // 1-based bit decided by the basis read
    bool accept = false;     // claimed GT_i(x), i.e. "x <= i"
    uint64_t queries_used = 0;
};

GtRun gt_b_run(const OracleTable& table, const BitString& i, uint32_t copy);
bool gt_b(const OracleTable& table, const BitString& i, uint32_t copy);

// Query budget of one gt_b run (loop plus the final basis read).
uint64_t gt_b_budget(uint32_t n, uint32_t alpha);

// Anchored substring test: claimed phi_{i,s}(x) using copy `copy`. Exactly
// alpha queries for nonempty s, zero for empty s. Never rejects a true match.
bool ahs_b(const OracleTable& table, uint32_t i, const BitString& s, uint32_t copy,
           uint64_t* queries_used = nullptr);

// ---------------------------------------------------------------------------
// Noisy comparison search
// ---------------------------------------------------------------------------

enum class QuestionKind : uint8_t { Interval, Unit };

struct WalkParams {
    uint32_t n = 0;
    uint32_t interval_reps = 3;  // asks per question at internal nodes (majority)
    uint32_t unit_reps = 0;      // asks per endpoint at unit intervals; 0 = ceil(log2 n)
    uint32_t pass_target = 3;    // verified-leaf passes that finish the search
    uint64_t interval_ask_budget = 0;
    uint64_t unit_ask_budget = 0;
};

struct NoisySearchResult {
    uint32_t location = 0;  // key position k in 1..n, interval (k-1, k]
    bool confident = false;
    uint32_t steps = 0;
    uint64_t interval_asks = 0;
    uint64_t unit_asks = 0;
    std::map<uint32_t, uint64_t> interval_tally;  // asks per threshold a
    std::map<uint32_t, uint64_t> unit_tally;
};

// Random walk on the comparison tree over (0, n]. `ask(kind, a)` answers
// "is the key > a?" with fresh noise per call; thresholds 0 and n are never
// asked. Stops when a unit interval accumulates pass_target verifications or
// when a budget cannot cover the next visit.
NoisySearchResult noisy_walk(const std::function<bool(QuestionKind, uint32_t)>& ask,
                             const WalkParams& params);

// Front end with the standard budgets: c*log2(n) interval asks in total and
// 2*c^2*log2(n)^2 unit asks in total.
NoisySearchResult noisy_search(const std::function<bool(QuestionKind, uint32_t)>& comparator,
                               uint32_t n, uint32_t c);

// Comparator with iid two-sided noise: correct with probability p_correct.
std::function<bool(QuestionKind, uint32_t)> iid_comparator(uint32_t key, double p_correct,
                                                           Rng& rng);

// ---------------------------------------------------------------------------
// Prefix-variant GT via noisy search
// ---------------------------------------------------------------------------

struct GtPpRun {
    uint32_t copy = 0;
    uint32_t location = 0;
    bool search_confident = false;
    bool accept = false;
    uint64_t queries_used = 0;
    uint64_t interval_asks = 0;
    uint64_t unit_asks = 0;
};

// Runs the comparison-tree search against comparand i, consuming alpha fresh
// prefix strings of copy `copy` per ask, then decides by the basis bit at the
// returned location. Total asks are capped at 3*c*log2(n) so the query count
// stays within 3*alpha*c*log2(n) + 1.
GtPpRun gt_b_pp_run(const OracleTable& table, const BitString& i, uint32_t copy, uint32_t c);
bool gt_b_pp(const OracleTable& table, const BitString& i, uint32_t copy, uint32_t c);

uint64_t gt_b_pp_budget(uint32_t n, uint32_t alpha, uint32_t c);

// Final decision rule shared by both GT variants: accept iff x_loc <= i_loc.
inline bool gt_decide_at(bool x_bit, bool i_bit) { return !(x_bit && !i_bit); }

// ---------------------------------------------------------------------------
// Amplified tests and acceptance probabilities
// ---------------------------------------------------------------------------

uint32_t draw_copy(const BaseSpec& base, Rng& rng);  // uniform over 1..t

struct AmpRun {
    bool accept = false;
    uint32_t copy = 0;
};

AmpRun amplifier_gt(const OracleTable& table, const BitString& i, Rng& rng);
AmpRun amplifier_gt_pp(const OracleTable& table, const BitString& i, uint32_t c, Rng& rng);
AmpRun amplifier_ahs(const OracleTable& table, uint32_t i, const BitString& s, Rng& rng);

// Exact acceptance probability of the amplified test: accepting copies / t.
struct AcceptStat {
    uint32_t accepted = 0;
    uint32_t copies = 0;
    double value() const { return copies ? static_cast<double>(accepted) / copies : 0.0; }
};

AcceptStat acceptance_probability_gt(const Sample& sample, const BitString& i, const BitString& x);
AcceptStat acceptance_probability_gt_pp(const Sample& sample, const BitString& i,
                                        const BitString& x, uint32_t c);
AcceptStat acceptance_probability_ahs(const Sample& sample, uint32_t i, const BitString& s,
                                      const BitString& x);

// ---------------------------------------------------------------------------
// Error sweeps
// ---------------------------------------------------------------------------

enum class GtVariant : uint8_t { Segment, Prefix };

struct GtErrorCell {
    uint64_t i_value = 0;
    uint64_t x_value = 0;
    uint32_t wrong_copies = 0;
    uint32_t copies = 0;
    double mean_w() const { return copies ? static_cast<double>(wrong_copies) / copies : 0.0; }
};

// Exhaustive sweep over all (i, x) pairs and all copies; n <= 16.
std::vector<GtErrorCell> gt_error_matrix(const Sample& sample, GtVariant variant, uint32_t c = 0,
                                         std::vector<std::vector<uint8_t>>* per_copy = nullptr);

struct AhsErrorCell {
    uint32_t i = 0;
    std::string s;
    uint64_t x_value = 0;
    uint32_t wrong_copies = 0;
    uint32_t copies = 0;
    double mean_w() const { return copies ? static_cast<double>(wrong_copies) / copies : 0.0; }
};

struct AhsSweepPlan {
    bool full = false;       // full product over all (i, s, x)
    uint64_t samples = 0;    // otherwise: uniformly sampled triples
    uint64_t seed = 0;
};

std::vector<AhsErrorCell> ahs_error_matrix(const Sample& sample, const AhsSweepPlan& plan);

// True values the sweeps compare against.
bool gt_truth(const BitString& i, const BitString& x);              // x <= i
bool phi_truth(uint32_t i, const BitString& s, const BitString& x);

}  // namespace oideg
