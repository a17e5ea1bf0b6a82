#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oideg/bitstring.hpp"
#include "oideg/rng.hpp"

#include "json.hpp"

namespace oideg {

enum class SlotKind : uint8_t { Fixed, Free };

// A slot either pins one n-bit string or draws uniformly from the support of
// a template tau (zeros outside the template stay zero).
struct Slot {
    SlotKind kind;
    BitString value;  // fixed string, or tau for free slots

    static Slot fixed(BitString v) { return {SlotKind::Fixed, std::move(v)}; }
    static Slot free(BitString tau) { return {SlotKind::Free, std::move(tau)}; }
};

struct BaseSpec {
    uint32_t n = 0;
    uint32_t t = 0;                                 // number of prepackaged copies
    uint32_t alpha = 0;                             // strings consumed per equality test
    std::vector<Slot> slots;                        // 1-based in the public API
    std::vector<std::vector<uint32_t>> copy_slots;  // per copy: slot indices, occurrence order

    uint32_t m() const { return static_cast<uint32_t>(slots.size()); }
    const Slot& slot(uint32_t idx) const { return slots.at(idx - 1); }

    // Ordered positions of template tau inside copy j (1-based j). Empty if absent.
    const std::vector<uint32_t>& copy_positions(uint32_t j, const BitString& tau) const;

    // Checks slot lengths, copy partition and template-multiset equality.
    void validate() const;
    void build_template_index();

    nlohmann::ordered_json to_json() const;
    static BaseSpec from_json(const nlohmann::json& j);
    uint64_t hash() const;

    std::vector<std::map<std::string, std::vector<uint32_t>>> copy_templates;  // derived
};

struct Sample {
    const BaseSpec* base = nullptr;
    std::vector<BitString> strings;  // one per slot, 1-based via string_at

    const BitString& string_at(uint32_t idx) const { return strings.at(idx - 1); }
    void validate() const;
    nlohmann::ordered_json to_json() const;
};

// Binary-search segment base: free templates are the test segments of the
// comparison tree over positions 1..n, alpha copies per package, t packages.
// For n a power of two this is exactly the dyadic first-half family.
BaseSpec build_os_base(uint32_t n, uint32_t alpha, uint32_t t);

// Prefix-template base for the noisy-comparison protocol: every interval
// question "> a" of the comparison tree over (0, n] contributes 1^a 0^(n-a),
// unit-interval questions are provisioned 2*c*log2(n) times per package copy,
// and each package holds alpha*c*log2(n) copies of the question multiset.
BaseSpec build_ospp_base(uint32_t n, uint32_t alpha, uint32_t t, uint32_t c);

// All contiguous windows 0^(p-1) 1^w 0^(n-p-w+1), alpha copies per package.
BaseSpec build_ahs_base(uint32_t n, uint32_t alpha, uint32_t t);

// Fixed slots copied verbatim; each free slot gets fair bits on its support.
Sample sample(const BaseSpec& base, Rng& rng);

// Default alpha for the segment base: ceil(2*log2(log2 n)), at least 1.
uint32_t os_default_alpha(uint32_t n);
// Default package counts: ceil(250*n*ln 2) and ceil(1000*n*ln 2).
uint32_t os_default_t(uint32_t n);
uint32_t ahs_default_t(uint32_t n);

// The segment (lo, mid] family of the binary search tree over positions 1..n,
// in breadth-first order; |result| == n-1.
std::vector<std::pair<uint32_t, uint32_t>> search_tree_segments(uint32_t n);

// Template with ones exactly at positions lo+1..hi.
BitString segment_template(uint32_t n, uint32_t lo, uint32_t hi);

uint32_t ceil_log2(uint32_t n);

}  // namespace oideg
