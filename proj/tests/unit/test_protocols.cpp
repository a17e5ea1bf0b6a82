#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "oideg/protocols.hpp"

using namespace oideg;

namespace {

Sample sampled(const BaseSpec& base, uint64_t seed) {
    Rng rng(Rng::mix(seed));
    return sample(base, rng);
}

}  // namespace

TEST_CASE("gt_b accepts whenever x equals i, for every sample") {
    BaseSpec base = build_os_base(8, 2, 3);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Sample r = sampled(base, seed);
        for (uint64_t v : {0ull, 1ull, 128ull, 170ull, 255ull}) {
            BitString x = BitString::from_value(8, v);
            OracleTable table(r, x);
            for (uint32_t j = 1; j <= 3; ++j) CHECK(gt_b(table, x, j));
        }
    }
}

TEST_CASE("gt_b visited segments follow the paper recurrence on powers of two") {
    // The lo/hi walk must test exactly the intervals generated by the update
    // rule: equal -> (u, u + (u-l)/2], unequal -> (l, (l+u)/2].
    BaseSpec base = build_os_base(16, 1, 1);
    Sample r = sampled(base, 99);
    for (uint64_t iv : {0ull, 37ull, 65535ull}) {
        for (uint64_t xv : {511ull, 512ull, 43690ull}) {
            BitString i = BitString::from_value(16, iv);
            BitString x = BitString::from_value(16, xv);
            OracleTable table(r, x);
            GtRun run = gt_b_run(table, i, 1);
            uint32_t l = 0, u = 8;
            for (const auto& step : run.transcript) {
                CHECK(step.lo == l);
                CHECK(step.mid == u);
                if (step.equal) {
                    uint32_t tmp = u;
                    u = u + (u - l) / 2;
                    l = tmp;
                } else {
                    u = (u + l) / 2;
                }
            }
            CHECK(run.final_pos == l + 1);
        }
    }
}

TEST_CASE("gt_b hand trace: collision-free sample decides at the differing bit") {
    BaseSpec base = build_os_base(4, 2, 1);
    BitString i = BitString::from_string("0111");
    BitString x = BitString::from_string("0110");
    for (uint64_t seed = 0; seed < 64; ++seed) {
        Sample r = sampled(base, seed);
        OracleTable table(r, x);
        GtRun run = gt_b_run(table, i, 1);
        // Segments (0,2] and (2,3] agree, so the walk always lands on bit 4.
        CHECK(run.final_pos == 4);
        CHECK(run.accept == true);  // x_4 = 0 <= i_4 = 1
        CHECK(run.accept == gt_truth(i, x));
        CHECK(run.queries_used <= gt_b_budget(4, 2));
    }
}

TEST_CASE("gt_b per-pair failure probability within the stated bound") {
    const uint32_t n = 8;
    const uint32_t alpha = 4;
    BaseSpec base = build_os_base(n, alpha, 1);
    BitString i = BitString::from_string("01111111");
    BitString x = BitString::from_string("10000000");  // worst-case shape
    const uint32_t trials = 4000;
    uint32_t wrong = 0;
    for (uint32_t k = 0; k < trials; ++k) {
        Rng rng = Rng::derive(2024, "gtb-pair", k);
        Sample r = sample(base, rng);
        OracleTable table(r, x);
        if (gt_b(table, i, 1) != gt_truth(i, x)) ++wrong;
    }
    double bound = std::log2(n) * std::ldexp(1.0, -static_cast<int>(alpha));
    double sigma = std::sqrt(bound * (1 - bound) / trials);
    CHECK(static_cast<double>(wrong) / trials <= bound + 3 * sigma);
}

TEST_CASE("gt_b query budget holds exactly") {
    BaseSpec base = build_os_base(16, 3, 2);
    Sample r = sampled(base, 5);
    for (uint64_t iv : {0ull, 1000ull}) {
        BitString i = BitString::from_value(16, iv);
        OracleTable table(r, BitString::from_value(16, 777));
        table.reset_counter();
        gt_b(table, i, 2);
        CHECK(table.read_counter() == 3ull * 4 + 1);  // alpha*log2(n) + 1
        CHECK(table.read_counter() <= gt_b_budget(16, 3));
    }
}

TEST_CASE("gt_b on a malformed base raises a structural error") {
    BaseSpec base = build_os_base(8, 1, 1);
    // Remove the single occurrence of the last segment template.
    base.copy_slots[0].pop_back();
    base.build_template_index();
    BaseSpec broken = base;
    Rng rng(3);
    Sample r = sample(broken, rng);
    OracleTable table(r, BitString::zeros(8));
    bool threw = false;
    for (uint64_t iv = 0; iv < 256 && !threw; ++iv) {
        try {
            gt_b(table, BitString::from_value(8, iv), 1);
        } catch (const StructuralError&) {
            threw = true;
        }
    }
    CHECK(threw);
}

TEST_CASE("ahs_b never rejects a true match and meters exactly alpha queries") {
    const uint32_t n = 6, alpha = 4;
    BaseSpec base = build_ahs_base(n, alpha, 2);
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Sample r = sampled(base, seed);
        for (uint64_t xv = 0; xv < 64; xv += 7) {
            BitString x = BitString::from_value(n, xv);
            OracleTable table(r, x);
            for (uint32_t i = 1; i <= n; ++i)
                for (uint32_t len = 0; len <= n - i + 1; ++len) {
                    BitString s(len);
                    for (uint32_t p = 1; p <= len; ++p) s.set_bit(p, x.bit(i + p - 1));
                    uint64_t used = 0;
                    CHECK(ahs_b(table, i, s, 1 + (xv % 2), &used));
                    CHECK(used == (len == 0 ? 0 : alpha));
                }
        }
    }
}

TEST_CASE("ahs_b mismatch acceptance frequency is 2^-alpha") {
    const uint32_t n = 6, alpha = 4;
    BaseSpec base = build_ahs_base(n, alpha, 1);
    BitString x = BitString::from_string("101101");
    BitString s = BitString::from_string("0111");  // differs from x at position 2..5 = 0110
    const uint32_t trials = 30000;
    uint32_t accepts = 0;
    for (uint32_t k = 0; k < trials; ++k) {
        Rng rng = Rng::derive(77, "ahs-mismatch", k);
        Sample r = sample(base, rng);
        OracleTable table(r, x);
        if (ahs_b(table, 2, s, 1)) ++accepts;
    }
    double expect = std::ldexp(1.0, -static_cast<int>(alpha));
    double sigma = std::sqrt(expect * (1 - expect) / trials);
    CHECK(std::abs(static_cast<double>(accepts) / trials - expect) <= 3 * sigma);
}

TEST_CASE("ahs_b argument validation") {
    BaseSpec base = build_ahs_base(4, 2, 1);
    Sample r = sampled(base, 1);
    OracleTable table(r, BitString::zeros(4));
    CHECK_THROWS_AS(ahs_b(table, 0, BitString::from_string("1"), 1), std::invalid_argument);
    CHECK_THROWS_AS(ahs_b(table, 3, BitString::from_string("111"), 1), std::invalid_argument);
    CHECK_THROWS_AS(ahs_b(table, 1, BitString::from_string("1"), 5), std::invalid_argument);
}

TEST_CASE("noisy walk with a perfect comparator always locates the key") {
    for (uint32_t n : {2u, 8u, 64u}) {
        for (uint32_t key = 1; key <= n; key += std::max(1u, n / 7)) {
            std::set<std::pair<int, uint32_t>> distinct;
            auto cmp = [&](QuestionKind k, uint32_t a) {
                distinct.insert({k == QuestionKind::Interval ? 0 : 1, a});
                return key > a;
            };
            NoisySearchResult res = noisy_search(cmp, n, 8);
            CHECK(res.location == key);
            CHECK(res.confident);
            std::set<uint32_t> names;
            for (auto [k, a] : distinct) names.insert(a);
            CHECK(names.size() <= 3 * ceil_log2(n));
        }
    }
}

TEST_CASE("noisy walk at n=2 needs one distinct question") {
    auto cmp = [&](QuestionKind, uint32_t a) {
        CHECK(a == 1);  // only "> 1" is askable
        return false;   // key = 1
    };
    NoisySearchResult res = noisy_search(cmp, 2, 4);
    CHECK(res.location == 1);
}

TEST_CASE("noisy search succeeds at the 3/4-noise target") {
    const uint32_t n = 64, c = 60;
    uint32_t ok = 0;
    const uint32_t trials = 600;
    for (uint32_t k = 0; k < trials; ++k) {
        Rng rng = Rng::derive(4242, "walktest", k);
        uint32_t key = static_cast<uint32_t>(rng.below(n)) + 1;
        auto cmp = iid_comparator(key, 0.75, rng);
        NoisySearchResult res = noisy_search(cmp, n, c);
        if (res.location == key) ++ok;
        // Per-question budgets.
        for (const auto& [a, cnt] : res.interval_tally) CHECK(cnt <= c * ceil_log2(n));
        for (const auto& [a, cnt] : res.unit_tally)
            CHECK(cnt <= 2ull * c * c * ceil_log2(n) * ceil_log2(n));
    }
    double target = 11.0 / 12;
    double sigma = std::sqrt(target * (1 - target) / trials);
    CHECK(static_cast<double>(ok) / trials >= target - 3 * sigma);
}

TEST_CASE("gt_b_pp noiseless stand-in is exhaustively correct at n=8") {
    const uint32_t n = 8;
    for (uint64_t iv = 0; iv < 256; ++iv)
        for (uint64_t xv = 0; xv < 256; ++xv) {
            // Exact prefix comparator: "key > a" iff the first a bits agree.
            auto cmp = [&](QuestionKind, uint32_t a) {
                uint64_t mask = a == 0 ? 0 : (((1ull << a) - 1) << (n - a));
                return (iv & mask) == (xv & mask);
            };
            NoisySearchResult res = noisy_search(cmp, n, 8);
            uint32_t p = res.location;
            bool x_bit = (xv >> (n - p)) & 1;
            bool i_bit = (iv >> (n - p)) & 1;
            CHECK(gt_decide_at(x_bit, i_bit) == (xv <= iv));
        }
}

TEST_CASE("gt_b_pp accepts x == i and stays within budget") {
    const uint32_t n = 8, c = 6;
    BaseSpec base = build_ospp_base(n, 2, 2, c);
    Sample r = sampled(base, 31);
    for (uint64_t v : {0ull, 100ull, 255ull}) {
        BitString x = BitString::from_value(n, v);
        OracleTable table(r, x);
        GtPpRun run = gt_b_pp_run(table, x, 1, c);
        CHECK(run.accept);
        CHECK(run.location == n);
        CHECK(run.queries_used <= gt_b_pp_budget(n, 2, c));
    }
}

TEST_CASE("gt_b_pp per-pair success at the calibrated constant") {
    const uint32_t n = 8, c = 12;
    BaseSpec base = build_ospp_base(n, 2, 1, c);
    const uint32_t trials = 800;
    uint32_t ok = 0;
    for (uint32_t k = 0; k < trials; ++k) {
        Rng rng = Rng::derive(99, "gtpp-pair", k);
        Sample r = sample(base, rng);
        uint64_t iv = rng.below(256), xv = rng.below(256);
        BitString i = BitString::from_value(n, iv);
        BitString x = BitString::from_value(n, xv);
        OracleTable table(r, x);
        GtPpRun run = gt_b_pp_run(table, i, 1, c);
        CHECK(run.queries_used <= gt_b_pp_budget(n, 2, c));
        if (run.accept == (xv <= iv)) ++ok;
    }
    double target = 11.0 / 12;
    double sigma = std::sqrt(target * (1 - target) / trials);
    CHECK(static_cast<double>(ok) / trials >= target - 3 * sigma);
}

TEST_CASE("amplifier with one copy reduces to the per-copy test") {
    BaseSpec base = build_os_base(8, 2, 1);
    Sample r = sampled(base, 3);
    BitString i = BitString::from_value(8, 200);
    BitString x = BitString::from_value(8, 90);
    OracleTable table(r, x);
    Rng rng(8);
    AmpRun run = amplifier_gt(table, i, rng);
    CHECK(run.copy == 1);
    CHECK(run.accept == gt_b(table, i, 1));
}

TEST_CASE("amplifier copy choice is uniform") {
    BaseSpec base = build_os_base(4, 1, 10);
    Rng rng(17);
    std::map<uint32_t, uint32_t> hits;
    const uint32_t trials = 100000;
    for (uint32_t k = 0; k < trials; ++k) ++hits[draw_copy(base, rng)];
    double sigma = std::sqrt(0.1 * 0.9 / trials);
    for (uint32_t j = 1; j <= 10; ++j)
        CHECK(std::abs(hits[j] / static_cast<double>(trials) - 0.1) <= 3 * sigma);
}

TEST_CASE("acceptance probability counts accepting copies exactly") {
    BaseSpec base = build_os_base(8, 2, 7);
    Sample r = sampled(base, 21);
    BitString i = BitString::from_value(8, 55);
    BitString x = BitString::from_value(8, 200);
    AcceptStat st = acceptance_probability_gt(r, i, x);
    CHECK(st.copies == 7);
    OracleTable table(r, x);
    uint32_t manual = 0;
    for (uint32_t j = 1; j <= 7; ++j)
        if (gt_b(table, i, j)) ++manual;
    CHECK(st.accepted == manual);
    // A value in {0, 1/t, ..., 1}.
    CHECK(st.accepted <= st.copies);
    // All copies agree when x == i.
    AcceptStat diag = acceptance_probability_gt(r, x, x);
    CHECK(diag.accepted == diag.copies);
}

TEST_CASE("gt error matrix diagonal is clean and matches truth elsewhere") {
    BaseSpec base = build_os_base(4, 2, 3);
    Sample r = sampled(base, 12);
    std::vector<std::vector<uint8_t>> per_copy;
    auto cells = gt_error_matrix(r, GtVariant::Segment, 0, &per_copy);
    CHECK(cells.size() == 16 * 16);
    for (size_t idx = 0; idx < cells.size(); ++idx) {
        const auto& cell = cells[idx];
        if (cell.i_value == cell.x_value) CHECK(cell.wrong_copies == 0);
        uint32_t manual = 0;
        for (uint8_t w : per_copy[idx]) manual += w;
        CHECK(manual == cell.wrong_copies);
    }
}

TEST_CASE("ahs error matrix full sweep on a tiny instance") {
    BaseSpec base = build_ahs_base(3, 4, 2);
    Sample r = sampled(base, 9);
    AhsSweepPlan plan;
    plan.full = true;
    auto cells = ahs_error_matrix(r, plan);
    // Matching triples never miss.
    for (const auto& cell : cells) {
        BitString x = BitString::from_value(3, cell.x_value);
        BitString s = BitString::from_string(cell.s);
        if (phi_truth(cell.i, s, x)) CHECK(cell.wrong_copies == 0);
    }
    // Sampled plan runs and stays in range.
    AhsSweepPlan sub;
    sub.samples = 50;
    sub.seed = 4;
    auto sampled_cells = ahs_error_matrix(r, sub);
    CHECK(sampled_cells.size() == 50);
}
