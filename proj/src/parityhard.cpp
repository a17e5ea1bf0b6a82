#include "oideg/parityhard.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace oideg {

bool crap_eval(const CrapInstance& instance, const BitString& x) {
    if (!instance.sample) throw std::invalid_argument("crap_eval: missing sample");
    OracleTable table(*instance.sample, x);
    bool acc = false;
    for (uint32_t j = 1; j <= table.n(); ++j) acc ^= table.query(j);
    return acc;
}

namespace {

BitString subset_xor(const Sample& sample, const std::vector<uint32_t>& T) {
    return xor_subset(sample.strings, T);
}

}  // namespace

int64_t character_sum_direct(const Sample& sample, const std::vector<uint32_t>& T,
                             uint32_t direct_cap) {
    uint32_t n = sample.base->n;
    if (n > direct_cap)
        throw std::invalid_argument("character_sum_direct: n exceeds the enumeration cap");
    BitString w = BitString::ones(n) ^ subset_xor(sample, T);
    uint64_t wv = w.to_value();
    int64_t sum = 0;
    for (uint64_t x = 0; x < (1ull << n); ++x)
        sum += (std::popcount(x & wv) & 1u) ? -1 : 1;
    return sum;
}

int64_t character_sum_closed(const Sample& sample, const std::vector<uint32_t>& T) {
    uint32_t n = sample.base->n;
    return subset_xor(sample, T) == BitString::ones(n) ? (int64_t{1} << n) : 0;
}

CharacterSum character_sum(const Sample& sample, const std::vector<uint32_t>& T,
                           uint32_t direct_cap) {
    CharacterSum out;
    out.value = character_sum_closed(sample, T);
    if (sample.base->n <= direct_cap) {
        int64_t direct = character_sum_direct(sample, T, direct_cap);
        if (direct != out.value)
            throw std::logic_error("character_sum: closed form and direct sum disagree");
        out.direct_checked = true;
    }
    return out;
}

IndexProb IndexTypeReport::one_prob(uint32_t pos) const {
    switch (types.at(pos - 1)) {
        case IndexType::I: return {1, 2};
        case IndexType::II: return {1, 1};
        default: return {0, 1};
    }
}

double IndexTypeReport::probability() const {
    return prob_zero ? 0.0 : std::ldexp(1.0, -static_cast<int>(half_power));
}

IndexTypeReport classify_indices(const BaseSpec& base, const std::vector<uint32_t>& T) {
    IndexTypeReport rep;
    rep.types.assign(base.n, IndexType::III);
    std::vector<bool> fixed_xor(base.n + 1, false);
    std::vector<bool> has_free(base.n + 1, false);
    for (uint32_t idx : T) {
        if (idx == 0 || idx > base.m())
            throw std::invalid_argument("classify_indices: slot index out of range");
        const Slot& s = base.slot(idx);
        for (uint32_t k = 1; k <= base.n; ++k) {
            if (!s.value.bit(k)) continue;
            if (s.kind == SlotKind::Free)
                has_free[k] = true;
            else
                fixed_xor[k] = !fixed_xor[k];
        }
    }
    for (uint32_t k = 1; k <= base.n; ++k) {
        IndexType ty = has_free[k] ? IndexType::I
                                   : (fixed_xor[k] ? IndexType::II : IndexType::III);
        rep.types[k - 1] = ty;
        if (ty == IndexType::I) ++rep.n1;
        if (ty == IndexType::II) ++rep.n2;
        if (ty == IndexType::III) ++rep.n3;
    }
    rep.prob_zero = rep.n3 > 0;
    rep.half_power = rep.n1;
    return rep;
}

int default_cover_bound(const BaseSpec& base) {
    double d = std::floor(base.n / (4.0 * std::log2(static_cast<double>(base.m())))) - 1.0;
    return d < 0 ? 0 : static_cast<int>(d);
}

BadSubsetStats bad_subset_probability(const BaseSpec& base, int d, uint32_t samples, Rng& rng) {
    if (d < 0) throw std::invalid_argument("bad_subset_probability: d >= 0 required");
    BadSubsetStats st;
    st.samples = samples;
    st.d = d;
    BitString target = BitString::ones(base.n);
    for (uint32_t k = 0; k < samples; ++k) {
        Sample r = sample(base, rng);
        if (!exists_small_xor_cover(r.strings, static_cast<uint32_t>(d), target)) ++st.no_cover;
    }
    return st;
}

}  // namespace oideg
