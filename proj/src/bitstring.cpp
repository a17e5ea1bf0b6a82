#include "oideg/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>

namespace oideg {

namespace {

uint64_t tail_mask(uint32_t len) {
    uint32_t r = len & 63;
    return r == 0 ? ~0ull : (~0ull >> (64 - r));
}

// FNV-1a over 64-bit words.
uint64_t fnv1a(uint64_t h, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

BitString BitString::ones(uint32_t n) {
    BitString b(n);
    for (auto& w : b.w_) w = ~0ull;
    if (!b.w_.empty()) b.w_.back() &= tail_mask(n);
    return b;
}

BitString BitString::basis(uint32_t n, uint32_t j) {
    BitString b(n);
    b.set_bit(j, true);
    return b;
}

BitString BitString::from_string(const std::string& s) {
    BitString b(static_cast<uint32_t>(s.size()));
    for (uint32_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            b.set_bit(i + 1, true);
        else if (s[i] != '0')
            throw std::invalid_argument("BitString: bad character '" + std::string(1, s[i]) +
                                        "' in \"" + s + "\"");
    }
    return b;
}

BitString BitString::from_value(uint32_t n, uint64_t value) {
    if (n > 64) throw std::invalid_argument("BitString::from_value: n > 64");
    if (n < 64 && (value >> n) != 0)
        throw std::invalid_argument("BitString::from_value: value does not fit in n bits");
    BitString b(n);
    for (uint32_t pos = 1; pos <= n; ++pos)
        if ((value >> (n - pos)) & 1ull) b.set_bit(pos, true);
    return b;
}

void BitString::set_bit(uint32_t pos, bool v) {
    check_pos(pos);
    uint64_t mask = 1ull << ((pos - 1) & 63);
    if (v)
        w_[(pos - 1) >> 6] |= mask;
    else
        w_[(pos - 1) >> 6] &= ~mask;
}

uint32_t BitString::popcount() const {
    uint32_t c = 0;
    for (uint64_t w : w_) c += static_cast<uint32_t>(std::popcount(w));
    return c;
}

bool BitString::is_zero() const {
    for (uint64_t w : w_)
        if (w) return false;
    return true;
}

BitString BitString::operator^(const BitString& o) const {
    BitString r(*this);
    r ^= o;
    return r;
}

BitString& BitString::operator^=(const BitString& o) {
    check_len(o);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

BitString BitString::operator&(const BitString& o) const {
    check_len(o);
    BitString r(*this);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
}

BitString BitString::complement() const {
    BitString r(*this);
    for (auto& w : r.w_) w = ~w;
    if (!r.w_.empty()) r.w_.back() &= tail_mask(len_);
    return r;
}

int BitString::compare(const BitString& a, const BitString& b) {
    a.check_len(b);
    auto diff = a.first_diff(b);
    if (!diff) return 0;
    return a.bit(*diff) ? 1 : -1;
}

bool BitString::operator<(const BitString& o) const { return compare(*this, o) < 0; }

std::optional<uint32_t> BitString::first_diff(const BitString& o) const {
    check_len(o);
    // Lower word / lower bit = more significant position.
    for (size_t i = 0; i < w_.size(); ++i) {
        uint64_t x = w_[i] ^ o.w_[i];
        if (x) return static_cast<uint32_t>(64 * i + std::countr_zero(x) + 1);
    }
    return std::nullopt;
}

std::string BitString::str() const {
    std::string s(len_, '0');
    for (uint32_t pos = 1; pos <= len_; ++pos)
        if (bit(pos)) s[pos - 1] = '1';
    return s;
}

uint64_t BitString::to_value() const {
    if (len_ > 64) throw std::invalid_argument("BitString::to_value: n > 64");
    uint64_t v = 0;
    for (uint32_t pos = 1; pos <= len_; ++pos) v = (v << 1) | static_cast<uint64_t>(bit(pos));
    return v;
}

uint64_t BitString::hash() const {
    uint64_t h = fnv1a(0xcbf29ce484222325ull, len_);
    for (uint64_t w : w_) h = fnv1a(h, w);
    return h;
}

bool inner_product(const BitString& a, const BitString& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("inner_product: length mismatch");
    uint64_t acc = 0;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (size_t i = 0; i < wa.size(); ++i) acc ^= wa[i] & wb[i];
    return std::popcount(acc) & 1u;
}

BitString xor_subset(const std::vector<BitString>& strings, const std::vector<uint32_t>& subset) {
    if (strings.empty() && !subset.empty())
        throw std::invalid_argument("xor_subset: index into empty list");
    uint32_t n = strings.empty() ? 0 : strings.front().length();
    BitString acc(n);
    for (uint32_t idx : subset) {
        if (idx == 0 || idx > strings.size())
            throw std::invalid_argument("xor_subset: index " + std::to_string(idx) +
                                        " outside 1.." + std::to_string(strings.size()));
        acc ^= strings[idx - 1];
    }
    return acc;
}

uint32_t rank_gf2(const std::vector<BitString>& strings) {
    if (strings.empty()) return 0;
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(strings.size());
    for (const auto& s : strings) rows.push_back(s.words());
    size_t words = rows.front().size();
    uint32_t rank = 0;
    size_t row = 0;
    for (size_t w = 0; w < words && row < rows.size(); ++w) {
        for (int b = 0; b < 64 && row < rows.size(); ++b) {
            uint64_t mask = 1ull << b;
            size_t pivot = row;
            while (pivot < rows.size() && !(rows[pivot][w] & mask)) ++pivot;
            if (pivot == rows.size()) continue;
            std::swap(rows[row], rows[pivot]);
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r != row && (rows[r][w] & mask))
                    for (size_t k = 0; k < words; ++k) rows[r][k] ^= rows[row][k];
            }
            ++row;
            ++rank;
        }
    }
    return rank;
}

namespace {

struct WordsKey {
    std::vector<uint64_t> w;
    bool operator==(const WordsKey& o) const { return w == o.w; }
};

struct WordsKeyHash {
    size_t operator()(const WordsKey& k) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (uint64_t v : k.w) h = fnv1a(h, v);
        return static_cast<size_t>(h);
    }
};

// Enumerates subsets of `indices` of size <= d in increasing size order,
// calling visit(xor_value, subset). Returns false if the cap was hit.
template <typename Visit>
bool enumerate_subsets(const std::vector<BitString>& strings, const std::vector<uint32_t>& indices,
                       uint32_t d, uint64_t cap, uint64_t& used, Visit&& visit) {
    uint32_t n = strings.empty() ? 0 : strings.front().length();
    std::vector<uint32_t> chosen;
    BitString acc(n);
    // Depth-first over combinations; the size bound keeps the tree small.
    std::function<bool(uint32_t)> rec = [&](uint32_t start) -> bool {
        if (++used > cap) return false;
        visit(acc, chosen);
        if (chosen.size() == d) return true;
        for (uint32_t k = start; k < indices.size(); ++k) {
            chosen.push_back(indices[k]);
            acc ^= strings[indices[k] - 1];
            if (!rec(k + 1)) return false;
            acc ^= strings[indices[k] - 1];
            chosen.pop_back();
        }
        return true;
    };
    return rec(0);
}

}  // namespace

std::optional<std::vector<uint32_t>> exists_small_xor_cover(const std::vector<BitString>& strings,
                                                            uint32_t d, const BitString& target,
                                                            uint64_t enumeration_cap) {
    uint32_t m = static_cast<uint32_t>(strings.size());
    for (const auto& s : strings)
        if (s.length() != target.length())
            throw std::invalid_argument("exists_small_xor_cover: length mismatch");
    if (target.is_zero()) return std::vector<uint32_t>{};
    if (m == 0) return std::nullopt;
    d = std::min(d, m);

    // Span pre-filter: if target is outside the span no cover exists at any d.
    {
        std::vector<BitString> with = strings;
        with.push_back(target);
        if (rank_gf2(with) > rank_gf2(strings)) return std::nullopt;
    }

    // Tiny inputs: plain enumeration.
    uint64_t used = 0;
    if (m <= 16 || d <= 2) {
        std::vector<uint32_t> all(m);
        for (uint32_t i = 0; i < m; ++i) all[i] = i + 1;
        std::optional<std::vector<uint32_t>> found;
        enumerate_subsets(strings, all, d, enumeration_cap, used,
                          [&](const BitString& acc, const std::vector<uint32_t>& subset) {
                              if (!found && acc == target) found = subset;
                          });
        if (used > enumeration_cap) throw std::runtime_error("exists_small_xor_cover: cap exceeded");
        return found;
    }

    // Meet in the middle: index the XORs of small subsets of the first half,
    // keeping one minimum-size witness per value, then scan the second half.
    std::vector<uint32_t> half_a, half_b;
    for (uint32_t i = 1; i <= m / 2; ++i) half_a.push_back(i);
    for (uint32_t i = m / 2 + 1; i <= m; ++i) half_b.push_back(i);

    std::unordered_map<WordsKey, std::vector<uint32_t>, WordsKeyHash> table;
    if (!enumerate_subsets(strings, half_a, d, enumeration_cap, used,
                           [&](const BitString& acc, const std::vector<uint32_t>& subset) {
                               WordsKey key{acc.words()};
                               auto it = table.find(key);
                               if (it == table.end() || it->second.size() > subset.size())
                                   table[key] = subset;
                           }))
        throw std::runtime_error("exists_small_xor_cover: cap exceeded");

    std::optional<std::vector<uint32_t>> found;
    if (!enumerate_subsets(strings, half_b, d, enumeration_cap, used,
                           [&](const BitString& acc, const std::vector<uint32_t>& subset) {
                               if (found) return;
                               WordsKey need{(acc ^ target).words()};
                               auto it = table.find(need);
                               if (it != table.end() && it->second.size() + subset.size() <= d) {
                                   std::vector<uint32_t> t = it->second;
                                   t.insert(t.end(), subset.begin(), subset.end());
                                   found = std::move(t);
                               }
                           }))
        throw std::runtime_error("exists_small_xor_cover: cap exceeded");
    return found;
}

}  // namespace oideg
