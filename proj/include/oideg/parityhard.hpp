#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oideg/goodbase.hpp"
#include "oideg/oracle.hpp"

namespace oideg {

// Parity of x read off the oracle encoding: XOR of the basis coordinates of
// Y(r, x). Well defined for every sample of a base whose first n slots are
// the standard basis.
struct CrapInstance {
    const Sample* sample = nullptr;
};

bool crap_eval(const CrapInstance& instance, const BitString& x);

// sum_x (-1)^(<x, 1^n xor (xor_{j in T} r_j)>) by brute force over all 2^n
// inputs. Refuses n above the cap.
int64_t character_sum_direct(const Sample& sample, const std::vector<uint32_t>& T,
                             uint32_t direct_cap = 20);

// Closed form: 2^n if the subset XOR equals 1^n, else 0.
int64_t character_sum_closed(const Sample& sample, const std::vector<uint32_t>& T);

struct CharacterSum {
    int64_t value = 0;
    bool direct_checked = false;
};

// Computes the closed form and, when n is within the cap, also the direct sum
// as a cross-check. Throws if the two routes ever disagree.
CharacterSum character_sum(const Sample& sample, const std::vector<uint32_t>& T,
                           uint32_t direct_cap = 20);

enum class IndexType : uint8_t { I, II, III };

struct IndexProb {
    uint32_t num = 0;
    uint32_t den = 1;
};

struct IndexTypeReport {
    std::vector<IndexType> types;  // per position 1..n
    uint32_t n1 = 0, n2 = 0, n3 = 0;
    // Pr[xor over T equals 1^n], exactly: zero, or 2^-half_power.
    bool prob_zero = true;
    uint32_t half_power = 0;

    IndexProb one_prob(uint32_t pos) const;  // per-index Pr[bit = 1]
    double probability() const;
};

// Classifies every position by how the slots of T touch it: a free template
// covering it (random bit), a deterministic XOR of fixed bits equal to one,
// or deterministically zero.
IndexTypeReport classify_indices(const BaseSpec& base, const std::vector<uint32_t>& T);

// floor(n / (4 log2 m)) - 1, clamped at 0.
int default_cover_bound(const BaseSpec& base);

struct BadSubsetStats {
    uint32_t samples = 0;
    uint32_t no_cover = 0;
    int d = 0;
    double frequency() const { return samples ? static_cast<double>(no_cover) / samples : 0.0; }
};

// Fraction of samples r for which no subset of at most d strings XORs to the
// all-ones string.
BadSubsetStats bad_subset_probability(const BaseSpec& base, int d, uint32_t samples, Rng& rng);

}  // namespace oideg
