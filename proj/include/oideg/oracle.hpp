#pragma once

#include <cstdint>

#include "oideg/goodbase.hpp"

namespace oideg {

// Materialized oracle for one (sample, x): coordinate j holds <r_j, x> mod 2.
// The first n coordinates are the bits of x. Reads are metered; the counter is
// not synchronized, so confine a table to one worker.
class OracleTable {
  public:
    OracleTable(const Sample& sample, BitString x);

    bool query(uint32_t j) const {
        if (j == 0 || j > m_) throw std::out_of_range("OracleTable::query: index out of range");
        ++counter_;
        return bit_unchecked(j);
    }

    uint64_t read_counter() const { return counter_; }
    void reset_counter() const { counter_ = 0; }

    uint32_t m() const { return m_; }
    uint32_t n() const { return sample_->base->n; }
    const Sample& sample() const { return *sample_; }
    const BitString& x() const { return x_; }

    // Unmetered read, for harness-side verification only.
    bool bit_unchecked(uint32_t j) const {
        return (bits_[(j - 1) >> 6] >> ((j - 1) & 63)) & 1u;
    }

  private:
    const Sample* sample_;
    BitString x_;
    uint32_t m_;
    std::vector<uint64_t> bits_;
    mutable uint64_t counter_ = 0;
};

}  // namespace oideg
