#pragma once

#include <cstdint>
#include <string_view>

namespace oideg {

// Counter-based generator: output i is a fixed 64-bit mix of (key, i), so any
// trial's stream can be reproduced from (master seed, experiment id, trial
// index) regardless of how work is scheduled across workers.
class Rng {
  public:
    explicit Rng(uint64_t key) : key_(key) {}

    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    static uint64_t fold(std::string_view s) {
        uint64_t h = 0xcbf29ce484222325ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }

    static Rng derive(uint64_t master, std::string_view experiment, uint64_t trial) {
        uint64_t k = mix(master + 0x9e3779b97f4a7c15ull);
        k = mix(k ^ fold(experiment));
        k = mix(k ^ (trial * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
        return Rng(k);
    }

    uint64_t next_u64() { return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ull); }

    bool next_bit() { return next_u64() >> 63; }

    // Uniform in [0, bound), bound >= 1. Rejection keeps it exactly uniform.
    uint64_t below(uint64_t bound) {
        if (bound == 0) return 0;
        uint64_t limit = ~0ull - ~0ull % bound;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    uint64_t counter() const { return ctr_; }

  private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace oideg
