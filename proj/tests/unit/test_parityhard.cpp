#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oideg/parityhard.hpp"

using namespace oideg;

namespace {

BitString bits(const std::string& s) { return BitString::from_string(s); }

// Six-string instance over n = 8: four free templates, two basis slots.
BaseSpec six_string_base() {
    BaseSpec base;
    base.n = 8;
    base.t = 1;
    base.slots.push_back(Slot::free(bits("11110010")));
    base.slots.push_back(Slot::free(bits("11100000")));
    base.slots.push_back(Slot::free(bits("10110010")));
    base.slots.push_back(Slot::free(bits("01000000")));
    base.slots.push_back(Slot::fixed(BitString::basis(8, 3)));
    base.slots.push_back(Slot::fixed(BitString::basis(8, 5)));
    base.copy_slots = {{1, 2, 3, 4}};
    base.build_template_index();
    return base;
}

}  // namespace

TEST_CASE("crap_eval equals parity of x") {
    BaseSpec base = build_os_base(6, 2, 2);
    Rng rng(4);
    Sample r = sample(base, rng);
    CrapInstance inst{&r};
    CHECK(crap_eval(inst, BitString::zeros(6)) == false);
    CHECK(crap_eval(inst, BitString::ones(6)) == false);   // n even
    CHECK(crap_eval(inst, bits("111110")) == true);
    for (uint64_t v = 0; v < 64; ++v) {
        BitString x = BitString::from_value(6, v);
        CHECK(crap_eval(inst, x) == x.parity());
    }
}

TEST_CASE("character sum trivial values") {
    // Base with two fixed strings whose XOR is all ones.
    BaseSpec base;
    base.n = 2;
    base.t = 0;
    base.slots.push_back(Slot::fixed(bits("10")));
    base.slots.push_back(Slot::fixed(bits("01")));
    base.slots.push_back(Slot::fixed(bits("11")));
    base.build_template_index();
    Rng rng(1);
    Sample r = sample(base, rng);
    CHECK(character_sum(r, {1, 2}).value == 4);   // XOR = 11
    CHECK(character_sum(r, {3}).value == 4);
    CHECK(character_sum(r, {1}).value == 0);      // character vector 01 sums to zero
    CHECK(character_sum(r, {1, 3}).value == 0);
    CHECK(character_sum(r, {}).value == 0);
    CHECK(character_sum(r, {1, 2}).direct_checked);
}

TEST_CASE("closed form equals direct summation on random samples") {
    const uint32_t n = 12;
    BaseSpec base = build_os_base(n, 2, 2);
    Rng rng(2025);
    for (int it = 0; it < 60; ++it) {
        Sample r = sample(base, rng);
        std::vector<uint32_t> T;
        for (uint32_t idx = 1; idx <= base.m(); ++idx)
            if (rng.below(8) == 0) T.push_back(idx);
        int64_t closed = character_sum_closed(r, T);
        int64_t direct = character_sum_direct(r, T);
        CHECK(closed == direct);
    }
    Sample r = sample(base, rng);
    CHECK_THROWS_AS(character_sum_direct(r, {1}, 10), std::invalid_argument);
}

TEST_CASE("six-string example classifies exactly") {
    BaseSpec base = six_string_base();
    auto rep = classify_indices(base, {1, 2, 3, 4, 5, 6});
    std::vector<IndexType> expect{IndexType::I,  IndexType::I,   IndexType::I, IndexType::I,
                                  IndexType::II, IndexType::III, IndexType::I, IndexType::III};
    CHECK(rep.types == expect);
    CHECK(rep.n1 == 5);
    CHECK(rep.n2 == 1);
    CHECK(rep.n3 == 2);
    std::vector<std::pair<uint32_t, uint32_t>> probs;
    for (uint32_t k = 1; k <= 8; ++k) {
        auto p = rep.one_prob(k);
        probs.emplace_back(p.num, p.den);
    }
    std::vector<std::pair<uint32_t, uint32_t>> expect_probs{
        {1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 1}, {0, 1}, {1, 2}, {0, 1}};
    CHECK(probs == expect_probs);
    CHECK(rep.prob_zero);
    CHECK(rep.probability() == 0.0);
}

TEST_CASE("all basis slots give probability one") {
    BaseSpec base;
    base.n = 4;
    base.t = 0;
    for (uint32_t j = 1; j <= 4; ++j) base.slots.push_back(Slot::fixed(BitString::basis(4, j)));
    base.build_template_index();
    auto rep = classify_indices(base, {1, 2, 3, 4});
    CHECK(rep.n2 == 4);
    CHECK(!rep.prob_zero);
    CHECK(rep.half_power == 0);
    CHECK(rep.probability() == 1.0);
}

TEST_CASE("single full-support free slot gives probability 2^-n") {
    BaseSpec base;
    base.n = 5;
    base.t = 1;
    base.slots.push_back(Slot::free(BitString::ones(5)));
    base.copy_slots = {{1}};
    base.build_template_index();
    auto rep = classify_indices(base, {1});
    CHECK(rep.n1 == 5);
    CHECK(!rep.prob_zero);
    CHECK(rep.probability() == doctest::Approx(1.0 / 32));
}

TEST_CASE("classification probability matches Monte Carlo frequency") {
    BaseSpec base;
    base.n = 6;
    base.t = 1;
    base.slots.push_back(Slot::free(bits("111000")));
    base.slots.push_back(Slot::free(bits("001110")));
    base.slots.push_back(Slot::fixed(BitString::basis(6, 6)));
    base.copy_slots = {{1, 2}};
    base.build_template_index();
    std::vector<uint32_t> T{1, 2, 3};
    auto rep = classify_indices(base, T);
    // Positions 1..5 are free-covered, position 6 is the basis slot.
    CHECK(rep.n1 == 5);
    CHECK(rep.n2 == 1);
    CHECK(!rep.prob_zero);
    double p = rep.probability();
    const uint32_t trials = 100000;
    uint32_t hits = 0;
    Rng rng(31);
    for (uint32_t k = 0; k < trials; ++k) {
        Sample r = sample(base, rng);
        if (xor_subset(r.strings, T) == BitString::ones(6)) ++hits;
    }
    double sigma = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(hits / static_cast<double>(trials) - p) <= 3 * sigma);
}

TEST_CASE("default cover bound clamps at zero") {
    BaseSpec base = build_os_base(16, 2, 4);
    CHECK(base.m() == 136);
    CHECK(default_cover_bound(base) == 0);
}

TEST_CASE("bad subset probability on the pure basis base") {
    BaseSpec base;
    base.n = 5;
    base.t = 0;
    for (uint32_t j = 1; j <= 5; ++j) base.slots.push_back(Slot::fixed(BitString::basis(5, j)));
    base.build_template_index();
    Rng rng(3);
    // All five basis strings XOR to the all-ones string.
    CHECK(bad_subset_probability(base, 5, 20, rng).frequency() == 0.0);
    // No proper subset of distinct basis vectors can reach it.
    CHECK(bad_subset_probability(base, 4, 20, rng).frequency() == 1.0);
}

TEST_CASE("bad subset frequency is monotone in d") {
    BaseSpec base = build_os_base(8, 2, 2);
    Rng rng1(5), rng2(5);
    auto lo = bad_subset_probability(base, 1, 60, rng1);
    auto hi = bad_subset_probability(base, 3, 60, rng2);
    CHECK(lo.frequency() >= hi.frequency());
}

TEST_CASE("samples without small covers kill every low-degree character sum") {
    BaseSpec base = build_os_base(6, 1, 1);  // m = 11
    Rng rng(8);
    const uint32_t d = 2;
    uint32_t checked = 0;
    for (int it = 0; it < 30 && checked < 5; ++it) {
        Sample r = sample(base, rng);
        if (exists_small_xor_cover(r.strings, d, BitString::ones(6))) continue;
        ++checked;
        // Enumerate all monomials T with |T| <= d: each must sum to zero.
        uint32_t m = base.m();
        CHECK(character_sum(r, {}).value == 0);
        for (uint32_t a = 1; a <= m; ++a) {
            CHECK(character_sum(r, {a}).value == 0);
            for (uint32_t b = a + 1; b <= m; ++b) CHECK(character_sum(r, {a, b}).value == 0);
        }
    }
    CHECK(checked == 5);
}
