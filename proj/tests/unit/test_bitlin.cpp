#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <bit>

#include "oideg/bitstring.hpp"
#include "oideg/rng.hpp"

using namespace oideg;

namespace {

BitString bits(const std::string& s) { return BitString::from_string(s); }

// Independent oracle: plain enumeration of every subset of size <= d.
std::optional<std::vector<uint32_t>> brute_force_cover(const std::vector<BitString>& strings,
                                                       uint32_t d, const BitString& target) {
    uint32_t m = static_cast<uint32_t>(strings.size());
    std::optional<std::vector<uint32_t>> best;
    for (uint64_t mask = 0; mask < (1ull << m); ++mask) {
        if (static_cast<uint32_t>(std::popcount(mask)) > d) continue;
        BitString acc(target.length());
        std::vector<uint32_t> subset;
        for (uint32_t k = 0; k < m; ++k)
            if ((mask >> k) & 1) {
                acc ^= strings[k];
                subset.push_back(k + 1);
            }
        if (acc == target) return subset;
    }
    return best;
}

std::vector<BitString> random_strings(uint32_t count, uint32_t n, Rng& rng) {
    std::vector<BitString> out;
    for (uint32_t k = 0; k < count; ++k) {
        BitString s(n);
        for (uint32_t p = 1; p <= n; ++p)
            if (rng.next_bit()) s.set_bit(p, true);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

TEST_CASE("text form is MSB first and numeric comparison is lexicographic") {
    BitString b = bits("0110");
    CHECK(b.bit(1) == false);
    CHECK(b.bit(2) == true);
    CHECK(b.str() == "0110");
    CHECK(b.to_value() == 6);
    CHECK(BitString::from_value(4, 6) == b);
    CHECK(bits("0111").leq(bits("1000")));
    CHECK(!bits("1000").leq(bits("0111")));
    CHECK(bits("1010").leq(bits("1010")));
    CHECK(BitString::basis(5, 2).str() == "01000");
    CHECK(BitString::ones(3).str() == "111");
}

TEST_CASE("inner product examples") {
    CHECK(inner_product(bits("1010"), bits("1111")) == false);
    BitString x = bits("10110");
    CHECK(inner_product(x, BitString::zeros(5)) == false);
    CHECK(inner_product(bits("111"), bits("101")) == false);
    // <1^n, x> is the parity of x
    for (uint64_t v = 0; v < 32; ++v) {
        BitString s = BitString::from_value(5, v);
        CHECK(inner_product(BitString::ones(5), s) == s.parity());
    }
    CHECK_THROWS_AS(inner_product(bits("10"), bits("100")), std::invalid_argument);
}

TEST_CASE("inner product is linear in the first argument") {
    Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        auto v = random_strings(3, 12, rng);
        CHECK(inner_product(v[0] ^ v[1], v[2]) ==
              (inner_product(v[0], v[2]) ^ inner_product(v[1], v[2])));
    }
}

TEST_CASE("xor_subset basics") {
    std::vector<BitString> s{bits("100"), bits("010"), bits("001")};
    CHECK(xor_subset(s, {1, 2, 3}) == bits("111"));
    CHECK(xor_subset(s, {}) == bits("000"));
    std::vector<BitString> s2{bits("101"), bits("010")};
    CHECK(xor_subset(s2, {1, 2}) == bits("111"));
    CHECK_THROWS_AS(xor_subset(s2, {3}), std::invalid_argument);
}

TEST_CASE("xor_subset respects symmetric difference") {
    Rng rng(11);
    auto s = random_strings(10, 9, rng);
    for (int it = 0; it < 100; ++it) {
        std::vector<uint32_t> a, b, sym;
        for (uint32_t k = 1; k <= 10; ++k) {
            bool in_a = rng.next_bit(), in_b = rng.next_bit();
            if (in_a) a.push_back(k);
            if (in_b) b.push_back(k);
            if (in_a != in_b) sym.push_back(k);
        }
        CHECK(xor_subset(s, sym) == (xor_subset(s, a) ^ xor_subset(s, b)));
    }
}

TEST_CASE("rank_gf2") {
    CHECK(rank_gf2({bits("100"), bits("010"), bits("110")}) == 2);
    CHECK(rank_gf2({}) == 0);
    CHECK(rank_gf2({BitString::ones(6)}) == 1);
    CHECK(rank_gf2({bits("1100"), bits("0110"), bits("1010")}) == 2);
}

TEST_CASE("cover search hand examples") {
    std::vector<BitString> s{bits("100"), bits("010"), bits("001")};
    auto t = exists_small_xor_cover(s, 3, bits("111"));
    REQUIRE(t.has_value());
    CHECK(t->size() <= 3);
    CHECK(xor_subset(s, *t) == bits("111"));

    std::vector<BitString> s2{bits("110"), bits("011")};
    CHECK(!exists_small_xor_cover(s2, 2, bits("111")).has_value());

    // Empty target is covered by the empty subset.
    auto e = exists_small_xor_cover(s2, 0, bits("000"));
    REQUIRE(e.has_value());
    CHECK(e->empty());
}

TEST_CASE("cover search agrees with brute force on random instances") {
    Rng rng(23);
    for (int it = 0; it < 30; ++it) {
        auto s = random_strings(20, 16, rng);
        BitString target(16);
        // Half the targets are reachable by construction.
        if (it % 2 == 0) {
            for (uint32_t k = 1; k <= 20; ++k)
                if (rng.below(5) == 0) target ^= s[k - 1];
        } else {
            for (uint32_t p = 1; p <= 16; ++p)
                if (rng.next_bit()) target.set_bit(p, true);
        }
        auto fast = exists_small_xor_cover(s, 4, target);
        auto slow = brute_force_cover(s, 4, target);
        CHECK(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(fast->size() <= 4);
            CHECK(xor_subset(s, *fast) == target);
        }
    }
}

TEST_CASE("cover search returns none outside the span") {
    Rng rng(31);
    auto s = random_strings(6, 12, rng);
    std::vector<BitString> aug = s;
    BitString target(12);
    target.set_bit(1, true);
    target.set_bit(12, true);
    aug.push_back(target);
    if (rank_gf2(aug) > rank_gf2(s)) CHECK(!exists_small_xor_cover(s, 6, target).has_value());
}

TEST_CASE("duplicate strings are allowed and indexed by position") {
    std::vector<BitString> s{bits("101"), bits("101")};
    auto t = exists_small_xor_cover(s, 2, bits("000"));
    REQUIRE(t.has_value());
    auto one = exists_small_xor_cover(s, 2, bits("101"));
    REQUIRE(one.has_value());
    CHECK(one->size() == 1);
}
