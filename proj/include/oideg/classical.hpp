#pragma once

#include <cstdint>

#include "oideg/bitstring.hpp"
#include "oideg/rng.hpp"

namespace oideg {

// Monotone-list oracle: answers GT_i(x) = [x <= i] and counts queries.
class SortedOracle {
  public:
    explicit SortedOracle(BitString x) : x_(std::move(x)) {}
    uint32_t n() const { return x_.length(); }
    bool query(const BitString& i) const {
        if (i.length() != x_.length()) throw std::invalid_argument("SortedOracle: length mismatch");
        ++queries_;
        return x_.leq(i);
    }
    uint64_t queries() const { return queries_; }
    void reset_queries() const { queries_ = 0; }

  private:
    BitString x_;
    mutable uint64_t queries_ = 0;
};

// Substring-presence indicators.
bool chi(const BitString& s, const BitString& x);                 // s anywhere in x
bool phi(uint32_t i, const BitString& s, const BitString& x);     // s anchored at i

class SubstringOracle {
  public:
    explicit SubstringOracle(BitString x) : x_(std::move(x)) {}
    uint32_t n() const { return x_.length(); }
    bool query(const BitString& s) const {
        if (s.length() > x_.length())
            throw std::invalid_argument("SubstringOracle: |s| exceeds n");
        ++queries_;
        return chi(s, x_);
    }
    uint64_t queries() const { return queries_; }
    void reset_queries() const { queries_ = 0; }

  private:
    BitString x_;
    mutable uint64_t queries_ = 0;
};

// Exact binary search: recovers x with exactly n queries.
BitString os_binary_search(const SortedOracle& oracle);

// First t binary-search queries, remaining bits sampled. Exactly t queries.
BitString os_recon_unbounded(const SortedOracle& oracle, uint32_t t, Rng& rng);

// Candidate from the truncated search, verified with two more reads (one when
// the candidate is the all-zero string); falls back to a fair coin.
bool os_decision_unbounded(const SortedOracle& oracle, uint32_t t, Rng& rng);

enum class TieBreak : uint8_t { PreferOne, PreferZero };

struct HsTrace {
    BitString segment;       // identified contiguous bits
    bool complete = false;   // reached |segment| == n
    uint64_t queries = 0;
    uint32_t extend_hits1 = 0;   // bits found on the first probe
    uint32_t extend_hits2 = 0;   // bits found on the second probe
    uint32_t phase_misses = 0;   // terminating double-miss probes
};

// Grow-right-then-grow-left reconstruction; at most 2n+2 queries when the
// two-phase sketch recovers x. `max_bits` truncates after that many
// identified bits (n or larger means run to completion).
HsTrace hs_identify(const SubstringOracle& oracle, uint32_t max_bits,
                    TieBreak tb = TieBreak::PreferOne);

BitString hs_reconstruct(const SubstringOracle& oracle, TieBreak tb = TieBreak::PreferOne);

// Truncated reconstruction with t identified bits, random fill and placement.
BitString hs_recon_unbounded(const SubstringOracle& oracle, uint32_t t, Rng& rng,
                             TieBreak tb = TieBreak::PreferOne);

// Adds the single whole-string query and a coin fallback. Returns parity.
bool hs_decision_unbounded(const SubstringOracle& oracle, uint32_t t, Rng& rng,
                           TieBreak tb = TieBreak::PreferOne);

}  // namespace oideg
