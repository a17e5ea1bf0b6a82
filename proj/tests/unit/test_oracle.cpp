#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oideg/oracle.hpp"

using namespace oideg;

namespace {

BaseSpec two_basis_base() {
    BaseSpec base;
    base.n = 2;
    base.t = 0;
    base.slots.push_back(Slot::fixed(BitString::basis(2, 1)));
    base.slots.push_back(Slot::fixed(BitString::basis(2, 2)));
    base.build_template_index();
    return base;
}

}  // namespace

TEST_CASE("basis coordinates reveal x") {
    BaseSpec base = two_basis_base();
    Rng rng(1);
    Sample r = sample(base, rng);
    OracleTable table(r, BitString::from_string("10"));
    CHECK(table.query(1) == true);
    CHECK(table.query(2) == false);
    CHECK(table.read_counter() == 2);
}

TEST_CASE("zero input zeroes every coordinate") {
    BaseSpec base = build_os_base(8, 2, 2);
    Rng rng(3);
    Sample r = sample(base, rng);
    OracleTable table(r, BitString::zeros(8));
    for (uint32_t j = 1; j <= table.m(); ++j) CHECK(table.query(j) == false);
}

TEST_CASE("free slot coordinate is the masked inner product") {
    BaseSpec base;
    base.n = 4;
    base.t = 1;
    base.slots.push_back(Slot::free(BitString::from_string("1100")));
    base.copy_slots = {{1}};
    base.build_template_index();
    Rng rng(9);
    for (int k = 0; k < 40; ++k) {
        Sample r = sample(base, rng);
        if (r.string_at(1) != BitString::from_string("1100")) continue;
        OracleTable table(r, BitString::from_string("0110"));
        CHECK(table.query(1) == true);  // <1100, 0110> = 1
        return;
    }
    FAIL("never sampled the full-support string");
}

TEST_CASE("queries are deterministic and metered; bits match the sample") {
    BaseSpec base = build_os_base(8, 3, 2);
    Rng rng(17);
    Sample r = sample(base, rng);
    BitString x = BitString::from_value(8, 0xB5);
    OracleTable table(r, x);
    table.reset_counter();
    for (uint32_t j = 1; j <= table.m(); ++j) {
        bool a = table.query(j);
        bool b = table.query(j);
        CHECK(a == b);
        CHECK(a == inner_product(r.string_at(j), x));
    }
    CHECK(table.read_counter() == 2ull * table.m());
    table.reset_counter();
    CHECK(table.read_counter() == 0);
    CHECK_THROWS_AS(table.query(0), std::out_of_range);
    CHECK_THROWS_AS(table.query(table.m() + 1), std::out_of_range);
}

TEST_CASE("parity identity over the basis block") {
    BaseSpec base = build_os_base(8, 2, 1);
    Rng rng(23);
    Sample r = sample(base, rng);
    for (uint64_t xv : {0ull, 1ull, 77ull, 200ull, 255ull}) {
        BitString x = BitString::from_value(8, xv);
        OracleTable table(r, x);
        bool acc = false;
        for (uint32_t j = 1; j <= 8; ++j) acc ^= table.query(j);
        CHECK(acc == x.parity());
        // The first n coordinates are exactly the bits of x.
        for (uint32_t j = 1; j <= 8; ++j) CHECK(table.query(j) == x.bit(j));
    }
}
