#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oideg {

// Fixed-length bit vector over GF(2). Positions are 1-based and position 1 is
// the most significant bit of the printed form, so "0110" has bit(1) == 0 and
// numeric comparison coincides with lexicographic order on str().
class BitString {
  public:
    BitString() = default;
    explicit BitString(uint32_t length) : len_(length), w_(words_for(length), 0) {}

    static BitString zeros(uint32_t n) { return BitString(n); }
    static BitString ones(uint32_t n);
    // Standard basis string with a single 1 at position j.
    static BitString basis(uint32_t n, uint32_t j);
    static BitString from_string(const std::string& s);
    // Interprets value as an n-bit number, n <= 64 (bit 1 = most significant).
    static BitString from_value(uint32_t n, uint64_t value);

    uint32_t length() const { return len_; }
    bool bit(uint32_t pos) const {
        check_pos(pos);
        return (w_[(pos - 1) >> 6] >> ((pos - 1) & 63)) & 1u;
    }
    void set_bit(uint32_t pos, bool v);

    uint32_t popcount() const;
    bool parity() const { return popcount() & 1u; }
    bool is_zero() const;

    BitString operator^(const BitString& o) const;
    BitString operator&(const BitString& o) const;
    BitString& operator^=(const BitString& o);
    // Bitwise complement restricted to the string's length.
    BitString complement() const;

    bool operator==(const BitString& o) const { return len_ == o.len_ && w_ == o.w_; }
    bool operator!=(const BitString& o) const { return !(*this == o); }
    bool operator<(const BitString& o) const;  // numeric order, equal lengths

    // -1, 0, +1 in numeric order (position 1 most significant).
    static int compare(const BitString& a, const BitString& b);
    bool leq(const BitString& o) const { return compare(*this, o) <= 0; }
    // Most significant position where the strings differ, if any.
    std::optional<uint32_t> first_diff(const BitString& o) const;

    std::string str() const;
    uint64_t to_value() const;  // n <= 64
    uint64_t hash() const;
    const std::vector<uint64_t>& words() const { return w_; }

  private:
    static uint32_t words_for(uint32_t n) { return (n + 63) / 64; }
    void check_pos(uint32_t pos) const {
        if (pos == 0 || pos > len_)
            throw std::out_of_range("BitString: position " + std::to_string(pos) +
                                    " outside 1.." + std::to_string(len_));
    }
    void check_len(const BitString& o) const {
        if (len_ != o.len_)
            throw std::invalid_argument("BitString: length mismatch (" + std::to_string(len_) +
                                        " vs " + std::to_string(o.len_) + ")");
    }

    uint32_t len_ = 0;
    std::vector<uint64_t> w_;
};

// <a,b> mod 2. Lengths must match.
bool inner_product(const BitString& a, const BitString& b);

// XOR of strings[i] over i in subset (1-based indices); empty subset gives 0^n.
BitString xor_subset(const std::vector<BitString>& strings, const std::vector<uint32_t>& subset);

// Searches for a subset T, |T| <= d, with xor_subset(strings, T) == target.
// Meet-in-the-middle over the two halves of the index range; a rank pre-filter
// rejects targets outside the GF(2) span. Throws if the enumeration would
// exceed `enumeration_cap` partial subsets.
std::optional<std::vector<uint32_t>> exists_small_xor_cover(const std::vector<BitString>& strings,
                                                            uint32_t d, const BitString& target,
                                                            uint64_t enumeration_cap = 80'000'000);

// GF(2) rank via Gaussian elimination.
uint32_t rank_gf2(const std::vector<BitString>& strings);

}  // namespace oideg
