#include "oideg/protocols.hpp"

#include <algorithm>
#include <unordered_map>

namespace oideg {

bool gt_truth(const BitString& i, const BitString& x) { return x.leq(i); }

bool phi_truth(uint32_t i, const BitString& s, const BitString& x) {
    uint32_t n = x.length();
    if (i == 0 || i > n) throw std::invalid_argument("phi: position out of range");
    if (s.length() > n - i + 1) throw std::invalid_argument("phi: substring too long");
    for (uint32_t k = 1; k <= s.length(); ++k)
        if (x.bit(i + k - 1) != s.bit(k)) return false;
    return true;
}

uint64_t gt_b_budget(uint32_t n, uint32_t alpha) {
    return static_cast<uint64_t>(alpha) * ceil_log2(n) + 1;
}

GtRun gt_b_run(const OracleTable& table, const BitString& i, uint32_t copy) {
    const BaseSpec& base = *table.sample().base;
    uint32_t n = base.n;
    if (i.length() != n) throw std::invalid_argument("gt_b: comparand length != n");
    if (copy == 0 || copy > base.t) throw std::invalid_argument("gt_b: copy out of range");

    GtRun run;
    run.copy = copy;
    uint64_t start = table.read_counter();

    // Binary search for the most significant differing bit. Invariant: the
    // prefix 1..lo tested equal so far; the candidate position is in (lo, hi].
    uint32_t lo = 0, hi = n;
    while (hi - lo > 1) {
        uint32_t mid = lo + (hi - lo) / 2;
        BitString tau = segment_template(n, lo, mid);
        const auto& positions = base.copy_positions(copy, tau);
        if (positions.empty())
            throw StructuralError("gt_b: copy " + std::to_string(copy) + " lacks segment " +
                                  tau.str());
        bool equal = true;
        for (uint32_t v : positions)
            if (inner_product(i, table.sample().string_at(v)) != table.query(v)) equal = false;
        run.transcript.push_back({lo, mid, hi, equal});
        if (equal)
            lo = mid;
        else
            hi = mid;
    }
    run.final_pos = hi;
    bool x_bit = table.query(run.final_pos);  // basis coordinate: x at final_pos
    run.accept = gt_decide_at(x_bit, i.bit(run.final_pos));
    run.queries_used = table.read_counter() - start;
    return run;
}

bool gt_b(const OracleTable& table, const BitString& i, uint32_t copy) {
    return gt_b_run(table, i, copy).accept;
}

bool ahs_b(const OracleTable& table, uint32_t i, const BitString& s, uint32_t copy,
           uint64_t* queries_used) {
    const BaseSpec& base = *table.sample().base;
    uint32_t n = base.n;
    if (i == 0 || i > n) throw std::invalid_argument("ahs_b: position out of range");
    if (s.length() > n - i + 1) throw std::invalid_argument("ahs_b: substring too long");
    if (copy == 0 || copy > base.t) throw std::invalid_argument("ahs_b: copy out of range");
    uint64_t start = table.read_counter();
    if (s.length() == 0) {
        if (queries_used) *queries_used = 0;
        return true;  // the empty string matches vacuously
    }
    BitString tau = segment_template(n, i - 1, i + s.length() - 1);
    BitString embedded(n);
    for (uint32_t k = 1; k <= s.length(); ++k)
        if (s.bit(k)) embedded.set_bit(i + k - 1, true);
    const auto& positions = base.copy_positions(copy, tau);
    if (positions.empty())
        throw StructuralError("ahs_b: copy " + std::to_string(copy) + " lacks window " + tau.str());
    bool accept = true;
    for (uint32_t v : positions)
        if (inner_product(embedded, table.sample().string_at(v)) != table.query(v)) accept = false;
    if (queries_used) *queries_used = table.read_counter() - start;
    return accept;
}

// ---------------------------------------------------------------------------
// Noisy comparison search
// ---------------------------------------------------------------------------

namespace {

struct Interval {
    uint32_t a, b;
    bool unit() const { return b - a == 1; }
    uint32_t mid() const { return a + (b - a) / 2; }
};

}  // namespace

NoisySearchResult noisy_walk(const std::function<bool(QuestionKind, uint32_t)>& ask,
                             const WalkParams& params) {
    uint32_t n = params.n;
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("noisy_walk: n must be a power of two >= 2");
    uint32_t unit_reps = params.unit_reps ? params.unit_reps : ceil_log2(n);

    NoisySearchResult res;
    std::vector<Interval> path{{0, n}};  // current node is path.back()
    std::map<uint32_t, uint32_t> leaf_passes;
    uint32_t best_leaf = 0, best_passes = 0;
    uint32_t last_leaf = 0;

    // Majority over reps asks; `expected` says which answer is consistent.
    // Thresholds 0 and n are known and cost nothing. Ties count as failures.
    auto consistent = [&](uint32_t a, bool expected, uint32_t reps, QuestionKind kind) {
        if (a == 0) return expected;       // "> 0" is always yes
        if (a == n) return !expected;      // "> n" is always no
        auto& tally = kind == QuestionKind::Interval ? res.interval_tally : res.unit_tally;
        auto& asks = kind == QuestionKind::Interval ? res.interval_asks : res.unit_asks;
        uint32_t agree = 0;
        for (uint32_t r = 0; r < reps; ++r) {
            ++asks;
            ++tally[a];
            if (ask(kind, a) == expected) ++agree;
        }
        return 2 * agree > reps;
    };

    while (true) {
        Interval cur = path.back();
        ++res.steps;
        if (!cur.unit()) {
            uint32_t unknown = (cur.a > 0 ? 1 : 0) + (cur.b < n ? 1 : 0) + 1;  // mid always
            if (res.interval_asks + static_cast<uint64_t>(unknown) * params.interval_reps >
                params.interval_ask_budget)
                break;
            bool in_a = consistent(cur.a, true, params.interval_reps, QuestionKind::Interval);
            bool in_b = consistent(cur.b, false, params.interval_reps, QuestionKind::Interval);
            if (!in_a || !in_b) {
                if (path.size() > 1) path.pop_back();  // back up; root stays put
                continue;
            }
            uint32_t mid = cur.mid();
            uint32_t agree = 0;
            for (uint32_t r = 0; r < params.interval_reps; ++r) {
                ++res.interval_asks;
                ++res.interval_tally[mid];
                if (ask(QuestionKind::Interval, mid)) ++agree;
            }
            bool go_right = 2 * agree > params.interval_reps;
            path.push_back(go_right ? Interval{mid, cur.b} : Interval{cur.a, mid});
        } else {
            uint32_t unknown = (cur.a > 0 ? 1 : 0) + (cur.b < n ? 1 : 0);
            if (res.unit_asks + static_cast<uint64_t>(unknown) * unit_reps > params.unit_ask_budget)
                break;
            last_leaf = cur.b;
            bool ok = consistent(cur.a, true, unit_reps, QuestionKind::Unit) &&
                      consistent(cur.b, false, unit_reps, QuestionKind::Unit);
            if (ok) {
                uint32_t p = ++leaf_passes[cur.b];
                if (p > best_passes) {
                    best_passes = p;
                    best_leaf = cur.b;
                }
                if (p >= params.pass_target) {
                    res.location = cur.b;
                    res.confident = true;
                    return res;
                }
                // stay and re-verify
            } else if (path.size() > 1) {
                path.pop_back();
            }
        }
    }

    // Budget ran out: best verified leaf, else the last leaf touched, else the
    // leftmost leaf under the current node.
    if (best_passes > 0)
        res.location = best_leaf;
    else if (last_leaf > 0)
        res.location = last_leaf;
    else
        res.location = path.back().a + 1;
    res.confident = false;
    return res;
}

NoisySearchResult noisy_search(const std::function<bool(QuestionKind, uint32_t)>& comparator,
                               uint32_t n, uint32_t c) {
    WalkParams p;
    p.n = n;
    uint64_t logn = ceil_log2(n);
    p.interval_ask_budget = static_cast<uint64_t>(c) * logn;
    p.unit_ask_budget = 2ull * c * c * logn * logn;
    return noisy_walk(comparator, p);
}

std::function<bool(QuestionKind, uint32_t)> iid_comparator(uint32_t key, double p_correct,
                                                           Rng& rng) {
    return [key, p_correct, &rng](QuestionKind, uint32_t a) {
        bool truth = key > a;
        return rng.next_unit() < p_correct ? truth : !truth;
    };
}

// ---------------------------------------------------------------------------
// Prefix-variant GT
// ---------------------------------------------------------------------------

uint64_t gt_b_pp_budget(uint32_t n, uint32_t alpha, uint32_t c) {
    return 3ull * alpha * c * ceil_log2(n) + 1;
}

GtPpRun gt_b_pp_run(const OracleTable& table, const BitString& i, uint32_t copy, uint32_t c) {
    const BaseSpec& base = *table.sample().base;
    uint32_t n = base.n;
    if (i.length() != n) throw std::invalid_argument("gt_b_pp: comparand length != n");
    if (copy == 0 || copy > base.t) throw std::invalid_argument("gt_b_pp: copy out of range");
    uint32_t alpha = base.alpha;
    if (alpha == 0) throw StructuralError("gt_b_pp: base does not declare alpha");

    uint64_t start = table.read_counter();
    // Fresh-string consumption in recorded occurrence order, one cursor per
    // prefix template. Exhaustion means the base was not built for this c.
    std::unordered_map<uint32_t, size_t> cursor;
    auto equality_ask = [&](QuestionKind, uint32_t a) {
        BitString tau = segment_template(n, 0, a);
        const auto& positions = base.copy_positions(copy, tau);
        size_t& cur = cursor[a];
        if (cur + alpha > positions.size())
            throw StructuralError("gt_b_pp: prefix " + std::to_string(a) +
                                  " exhausted in copy " + std::to_string(copy));
        bool equal = true;
        for (uint32_t k = 0; k < alpha; ++k) {
            uint32_t v = positions[cur + k];
            if (inner_product(i, table.sample().string_at(v)) != table.query(v)) equal = false;
        }
        cur += alpha;
        return equal;  // equal prefixes = "yes, the key > a"
    };

    WalkParams p;
    p.n = n;
    uint64_t logn = ceil_log2(n);
    p.interval_ask_budget = static_cast<uint64_t>(c) * logn;
    p.unit_ask_budget = 2ull * c * logn;
    NoisySearchResult search = noisy_walk(equality_ask, p);

    GtPpRun run;
    run.copy = copy;
    run.location = search.location;
    run.search_confident = search.confident;
    run.interval_asks = search.interval_asks;
    run.unit_asks = search.unit_asks;
    bool x_bit = table.query(run.location);
    run.accept = gt_decide_at(x_bit, i.bit(run.location));
    run.queries_used = table.read_counter() - start;
    return run;
}

bool gt_b_pp(const OracleTable& table, const BitString& i, uint32_t copy, uint32_t c) {
    return gt_b_pp_run(table, i, copy, c).accept;
}

// ---------------------------------------------------------------------------
// Amplifiers and acceptance probabilities
// ---------------------------------------------------------------------------

uint32_t draw_copy(const BaseSpec& base, Rng& rng) {
    if (base.t == 0) throw std::invalid_argument("draw_copy: base has no copies");
    return static_cast<uint32_t>(rng.below(base.t)) + 1;
}

AmpRun amplifier_gt(const OracleTable& table, const BitString& i, Rng& rng) {
    uint32_t j = draw_copy(*table.sample().base, rng);
    return {gt_b(table, i, j), j};
}

AmpRun amplifier_gt_pp(const OracleTable& table, const BitString& i, uint32_t c, Rng& rng) {
    uint32_t j = draw_copy(*table.sample().base, rng);
    return {gt_b_pp(table, i, j, c), j};
}

AmpRun amplifier_ahs(const OracleTable& table, uint32_t i, const BitString& s, Rng& rng) {
    uint32_t j = draw_copy(*table.sample().base, rng);
    return {ahs_b(table, i, s, j), j};
}

AcceptStat acceptance_probability_gt(const Sample& sample, const BitString& i, const BitString& x) {
    OracleTable table(sample, x);
    AcceptStat st;
    st.copies = sample.base->t;
    for (uint32_t j = 1; j <= st.copies; ++j)
        if (gt_b(table, i, j)) ++st.accepted;
    return st;
}

AcceptStat acceptance_probability_gt_pp(const Sample& sample, const BitString& i,
                                        const BitString& x, uint32_t c) {
    OracleTable table(sample, x);
    AcceptStat st;
    st.copies = sample.base->t;
    for (uint32_t j = 1; j <= st.copies; ++j)
        if (gt_b_pp(table, i, j, c)) ++st.accepted;
    return st;
}

AcceptStat acceptance_probability_ahs(const Sample& sample, uint32_t i, const BitString& s,
                                      const BitString& x) {
    OracleTable table(sample, x);
    AcceptStat st;
    st.copies = sample.base->t;
    for (uint32_t j = 1; j <= st.copies; ++j)
        if (ahs_b(table, i, s, j)) ++st.accepted;
    return st;
}

// ---------------------------------------------------------------------------
// Error sweeps
// ---------------------------------------------------------------------------

std::vector<GtErrorCell> gt_error_matrix(const Sample& sample, GtVariant variant, uint32_t c,
                                         std::vector<std::vector<uint8_t>>* per_copy) {
    const BaseSpec& base = *sample.base;
    uint32_t n = base.n;
    if (n > 16) throw std::invalid_argument("gt_error_matrix: exhaustive sweep capped at n = 16");
    uint64_t count = 1ull << n;
    std::vector<GtErrorCell> cells;
    cells.reserve(count * count);
    if (per_copy) per_copy->clear();
    for (uint64_t iv = 0; iv < count; ++iv) {
        BitString i = BitString::from_value(n, iv);
        for (uint64_t xv = 0; xv < count; ++xv) {
            BitString x = BitString::from_value(n, xv);
            OracleTable table(sample, x);
            bool truth = gt_truth(i, x);
            GtErrorCell cell;
            cell.i_value = iv;
            cell.x_value = xv;
            cell.copies = base.t;
            std::vector<uint8_t> w_row;
            if (per_copy) w_row.resize(base.t);
            for (uint32_t j = 1; j <= base.t; ++j) {
                bool out = variant == GtVariant::Segment ? gt_b(table, i, j)
                                                         : gt_b_pp(table, i, j, c);
                bool wrong = out != truth;
                if (wrong) ++cell.wrong_copies;
                if (per_copy) w_row[j - 1] = wrong;
            }
            if (per_copy) per_copy->push_back(std::move(w_row));
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<AhsErrorCell> ahs_error_matrix(const Sample& sample, const AhsSweepPlan& plan) {
    const BaseSpec& base = *sample.base;
    uint32_t n = base.n;
    std::vector<AhsErrorCell> cells;
    auto run_cell = [&](uint32_t i, const BitString& s, uint64_t xv) {
        BitString x = BitString::from_value(n, xv);
        OracleTable table(sample, x);
        bool truth = phi_truth(i, s, x);
        AhsErrorCell cell;
        cell.i = i;
        cell.s = s.str();
        cell.x_value = xv;
        cell.copies = base.t;
        for (uint32_t j = 1; j <= base.t; ++j)
            if (ahs_b(table, i, s, j) != truth) ++cell.wrong_copies;
        cells.push_back(std::move(cell));
    };

    if (plan.full) {
        if (n > 10) throw std::invalid_argument("ahs_error_matrix: full sweep capped at n = 10");
        for (uint32_t i = 1; i <= n; ++i)
            for (uint32_t len = 0; len <= n - i + 1; ++len)
                for (uint64_t sv = 0; sv < (1ull << len); ++sv)
                    for (uint64_t xv = 0; xv < (1ull << n); ++xv)
                        run_cell(i, BitString::from_value(len, sv), xv);
    } else {
        Rng rng(Rng::mix(plan.seed ^ 0x5eedful));
        for (uint64_t k = 0; k < plan.samples; ++k) {
            uint32_t i = static_cast<uint32_t>(rng.below(n)) + 1;
            uint32_t len = static_cast<uint32_t>(rng.below(n - i + 2));
            uint64_t sv = len ? rng.below(1ull << len) : 0;
            uint64_t xv = rng.below(1ull << n);
            run_cell(i, BitString::from_value(len, sv), xv);
        }
    }
    return cells;
}

}  // namespace oideg
