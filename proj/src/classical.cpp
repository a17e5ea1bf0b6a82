#include "oideg/classical.hpp"

#include <algorithm>

namespace oideg {

namespace {

BitString concat(const BitString& a, const BitString& b) {
    BitString out(a.length() + b.length());
    for (uint32_t p = 1; p <= a.length(); ++p) out.set_bit(p, a.bit(p));
    for (uint32_t p = 1; p <= b.length(); ++p) out.set_bit(a.length() + p, b.bit(p));
    return out;
}

BitString append_bit(const BitString& a, bool bit) {
    BitString out(a.length() + 1);
    for (uint32_t p = 1; p <= a.length(); ++p) out.set_bit(p, a.bit(p));
    out.set_bit(a.length() + 1, bit);
    return out;
}

BitString prepend_bit(bool bit, const BitString& a) {
    BitString out(a.length() + 1);
    out.set_bit(1, bit);
    for (uint32_t p = 1; p <= a.length(); ++p) out.set_bit(p + 1, a.bit(p));
    return out;
}

// Numeric decrement (position 1 is the most significant bit); x must be > 0.
BitString decrement(const BitString& x) {
    BitString out(x);
    for (uint32_t p = x.length(); p >= 1; --p) {
        if (out.bit(p)) {
            out.set_bit(p, false);
            return out;
        }
        out.set_bit(p, true);
    }
    throw std::invalid_argument("decrement: zero string");
}

BitString random_bits(uint32_t n, Rng& rng) {
    BitString out(n);
    for (uint32_t p = 1; p <= n; ++p)
        if (rng.next_bit()) out.set_bit(p, true);
    return out;
}

}  // namespace

bool phi(uint32_t i, const BitString& s, const BitString& x) {
    uint32_t n = x.length();
    if (i == 0 || i > n) throw std::invalid_argument("phi: position out of range");
    if (s.length() > n - i + 1) throw std::invalid_argument("phi: substring too long");
    for (uint32_t k = 1; k <= s.length(); ++k)
        if (x.bit(i + k - 1) != s.bit(k)) return false;
    return true;
}

bool chi(const BitString& s, const BitString& x) {
    if (s.length() > x.length()) return false;
    if (s.length() == 0) return true;
    for (uint32_t i = 1; i + s.length() - 1 <= x.length(); ++i)
        if (phi(i, s, x)) return true;
    return false;
}

BitString os_binary_search(const SortedOracle& oracle) {
    uint32_t n = oracle.n();
    BitString x(n);
    for (uint32_t k = 1; k <= n; ++k) {
        // Probe: known prefix, 0 at k, ones below. "x <= probe" iff x_k = 0.
        BitString probe(n);
        for (uint32_t p = 1; p < k; ++p) probe.set_bit(p, x.bit(p));
        for (uint32_t p = k + 1; p <= n; ++p) probe.set_bit(p, true);
        x.set_bit(k, !oracle.query(probe));
    }
    return x;
}

BitString os_recon_unbounded(const SortedOracle& oracle, uint32_t t, Rng& rng) {
    uint32_t n = oracle.n();
    if (t > n) throw std::invalid_argument("os_recon_unbounded: t > n");
    BitString x(n);
    for (uint32_t k = 1; k <= t; ++k) {
        BitString probe(n);
        for (uint32_t p = 1; p < k; ++p) probe.set_bit(p, x.bit(p));
        for (uint32_t p = k + 1; p <= n; ++p) probe.set_bit(p, true);
        x.set_bit(k, !oracle.query(probe));
    }
    for (uint32_t k = t + 1; k <= n; ++k) x.set_bit(k, rng.next_bit());
    return x;
}

bool os_decision_unbounded(const SortedOracle& oracle, uint32_t t, Rng& rng) {
    BitString cand = os_recon_unbounded(oracle, t, rng);
    bool below_ok = cand.is_zero() ? true : !oracle.query(decrement(cand));
    if (below_ok && oracle.query(cand)) return cand.parity();
    return rng.next_bit();
}

HsTrace hs_identify(const SubstringOracle& oracle, uint32_t max_bits, TieBreak tb) {
    uint32_t n = oracle.n();
    uint32_t goal = std::min(max_bits, n);
    bool first = tb == TieBreak::PreferOne;
    HsTrace tr;
    tr.segment = BitString(0);
    uint64_t start = oracle.queries();
    // Grow to the right until nothing extends, then to the left.
    while (tr.segment.length() < goal) {
        if (oracle.query(append_bit(tr.segment, first))) {
            tr.segment = append_bit(tr.segment, first);
            ++tr.extend_hits1;
        } else if (oracle.query(append_bit(tr.segment, !first))) {
            tr.segment = append_bit(tr.segment, !first);
            ++tr.extend_hits2;
        } else {
            ++tr.phase_misses;
            break;
        }
    }
    while (tr.segment.length() < goal) {
        if (oracle.query(prepend_bit(first, tr.segment))) {
            tr.segment = prepend_bit(first, tr.segment);
            ++tr.extend_hits1;
        } else if (oracle.query(prepend_bit(!first, tr.segment))) {
            tr.segment = prepend_bit(!first, tr.segment);
            ++tr.extend_hits2;
        } else {
            ++tr.phase_misses;
            break;
        }
    }
    tr.complete = tr.segment.length() == n;
    tr.queries = oracle.queries() - start;
    return tr;
}

BitString hs_reconstruct(const SubstringOracle& oracle, TieBreak tb) {
    return hs_identify(oracle, oracle.n(), tb).segment;
}

BitString hs_recon_unbounded(const SubstringOracle& oracle, uint32_t t, Rng& rng, TieBreak tb) {
    uint32_t n = oracle.n();
    HsTrace tr = hs_identify(oracle, t, tb);
    uint32_t free = n - tr.segment.length();
    BitString fill = random_bits(free, rng);
    uint32_t cut = static_cast<uint32_t>(rng.below(free + 1));
    BitString left(cut), right(free - cut);
    for (uint32_t p = 1; p <= cut; ++p) left.set_bit(p, fill.bit(p));
    for (uint32_t p = 1; p <= free - cut; ++p) right.set_bit(p, fill.bit(cut + p));
    return concat(concat(left, tr.segment), right);
}

bool hs_decision_unbounded(const SubstringOracle& oracle, uint32_t t, Rng& rng, TieBreak tb) {
    BitString cand = hs_recon_unbounded(oracle, t, rng, tb);
    if (oracle.query(cand)) return cand.parity();  // |cand| = n, so presence = equality
    return rng.next_bit();
}

}  // namespace oideg
