#include "oideg/goodbase.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace oideg {

uint32_t ceil_log2(uint32_t n) {
    uint32_t k = 0;
    while ((1u << k) < n) ++k;
    return k;
}

uint32_t os_default_alpha(uint32_t n) {
    if (n < 2) throw std::invalid_argument("os_default_alpha: n >= 2 required");
    double a = 2.0 * std::log2(std::log2(static_cast<double>(n)));
    auto v = static_cast<uint32_t>(std::ceil(a));
    return std::max(v, 1u);
}

uint32_t os_default_t(uint32_t n) {
    return static_cast<uint32_t>(std::ceil(250.0 * n * std::log(2.0)));
}

uint32_t ahs_default_t(uint32_t n) {
    return static_cast<uint32_t>(std::ceil(1000.0 * n * std::log(2.0)));
}

BitString segment_template(uint32_t n, uint32_t lo, uint32_t hi) {
    if (!(lo < hi && hi <= n)) throw std::invalid_argument("segment_template: bad segment");
    BitString tau(n);
    for (uint32_t p = lo + 1; p <= hi; ++p) tau.set_bit(p, true);
    return tau;
}

std::vector<std::pair<uint32_t, uint32_t>> search_tree_segments(uint32_t n) {
    std::vector<std::pair<uint32_t, uint32_t>> segs;
    std::deque<std::pair<uint32_t, uint32_t>> queue;  // intervals (lo, hi], hi - lo >= 2
    if (n >= 2) queue.emplace_back(0, n);
    while (!queue.empty()) {
        auto [lo, hi] = queue.front();
        queue.pop_front();
        uint32_t mid = lo + (hi - lo) / 2;
        segs.emplace_back(lo, mid);
        if (mid - lo >= 2) queue.emplace_back(lo, mid);
        if (hi - mid >= 2) queue.emplace_back(mid, hi);
    }
    return segs;
}

const std::vector<uint32_t>& BaseSpec::copy_positions(uint32_t j, const BitString& tau) const {
    static const std::vector<uint32_t> kEmpty;
    if (j == 0 || j > copy_templates.size()) return kEmpty;
    auto it = copy_templates[j - 1].find(tau.str());
    return it == copy_templates[j - 1].end() ? kEmpty : it->second;
}

void BaseSpec::build_template_index() {
    copy_templates.assign(copy_slots.size(), {});
    for (size_t j = 0; j < copy_slots.size(); ++j)
        for (uint32_t idx : copy_slots[j]) {
            const Slot& s = slot(idx);
            if (s.kind == SlotKind::Free) copy_templates[j][s.value.str()].push_back(idx);
        }
}

void BaseSpec::validate() const {
    for (const auto& s : slots)
        if (s.value.length() != n) throw std::invalid_argument("BaseSpec: slot length != n");
    if (copy_slots.size() != t) throw std::invalid_argument("BaseSpec: copy count != t");
    std::vector<bool> seen(slots.size() + 1, false);
    std::multiset<std::string> first_multiset;
    for (size_t j = 0; j < copy_slots.size(); ++j) {
        std::multiset<std::string> ms;
        for (uint32_t idx : copy_slots[j]) {
            if (idx == 0 || idx > slots.size())
                throw std::invalid_argument("BaseSpec: copy references bad slot");
            if (slot(idx).kind != SlotKind::Free)
                throw std::invalid_argument("BaseSpec: copy references a fixed slot");
            if (seen[idx]) throw std::invalid_argument("BaseSpec: slot in two copies");
            seen[idx] = true;
            ms.insert(slot(idx).value.str());
        }
        if (j == 0)
            first_multiset = std::move(ms);
        else if (ms != first_multiset)
            throw std::invalid_argument("BaseSpec: copies have different template multisets");
    }
    for (uint32_t idx = 1; idx <= slots.size(); ++idx)
        if (slot(idx).kind == SlotKind::Free && !seen[idx])
            throw std::invalid_argument("BaseSpec: free slot outside all copies");
}

nlohmann::ordered_json BaseSpec::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["m"] = m();
    nlohmann::ordered_json slots_j = nlohmann::ordered_json::array();
    for (const auto& s : slots) {
        nlohmann::ordered_json sj;
        if (s.kind == SlotKind::Fixed) {
            sj["kind"] = "fixed";
            sj["value"] = s.value.str();
        } else {
            sj["kind"] = "free";
            sj["tau"] = s.value.str();
        }
        slots_j.push_back(std::move(sj));
    }
    j["slots"] = std::move(slots_j);
    j["alpha"] = alpha;
    j["copies"] = {{"t", t}, {"layout", copy_slots}};
    return j;
}

BaseSpec BaseSpec::from_json(const nlohmann::json& j) {
    BaseSpec b;
    b.n = j.at("n").get<uint32_t>();
    for (const auto& sj : j.at("slots")) {
        if (sj.at("kind") == "fixed")
            b.slots.push_back(Slot::fixed(BitString::from_string(sj.at("value"))));
        else
            b.slots.push_back(Slot::free(BitString::from_string(sj.at("tau"))));
    }
    b.alpha = j.value("alpha", 0u);
    b.t = j.at("copies").at("t").get<uint32_t>();
    b.copy_slots = j.at("copies").at("layout").get<std::vector<std::vector<uint32_t>>>();
    b.build_template_index();
    b.validate();
    return b;
}

uint64_t BaseSpec::hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix_str = [&h](const std::string& s) {
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
    };
    mix_str(std::to_string(n));
    mix_str("/");
    for (const auto& s : slots) {
        mix_str(s.kind == SlotKind::Fixed ? "F" : "T");
        mix_str(s.value.str());
    }
    mix_str("/" + std::to_string(t) + "/" + std::to_string(alpha));
    return h;
}

namespace {

void add_basis_slots(BaseSpec& base) {
    for (uint32_t j = 1; j <= base.n; ++j)
        base.slots.push_back(Slot::fixed(BitString::basis(base.n, j)));
}

// Appends `copies` repetitions of the template list as one package.
void add_package(BaseSpec& base, const std::vector<BitString>& templates, uint32_t copies) {
    std::vector<uint32_t> layout;
    layout.reserve(templates.size() * copies);
    for (uint32_t c = 0; c < copies; ++c)
        for (const auto& tau : templates) {
            base.slots.push_back(Slot::free(tau));
            layout.push_back(base.m());
        }
    base.copy_slots.push_back(std::move(layout));
}

}  // namespace

BaseSpec build_os_base(uint32_t n, uint32_t alpha, uint32_t t) {
    if (n < 2) throw std::invalid_argument("build_os_base: n >= 2 required");
    if (alpha < 1 || t < 1) throw std::invalid_argument("build_os_base: alpha, t >= 1");
    BaseSpec base;
    base.n = n;
    base.t = t;
    base.alpha = alpha;
    add_basis_slots(base);
    std::vector<BitString> rhat;
    for (auto [lo, hi] : search_tree_segments(n)) rhat.push_back(segment_template(n, lo, hi));
    for (uint32_t j = 0; j < t; ++j) add_package(base, rhat, alpha);
    base.build_template_index();
    return base;
}

BaseSpec build_ospp_base(uint32_t n, uint32_t alpha, uint32_t t, uint32_t c) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("build_ospp_base: n must be a power of two >= 2");
    if (alpha < 1 || t < 1 || c < 1)
        throw std::invalid_argument("build_ospp_base: alpha, t, c >= 1");
    BaseSpec base;
    base.n = n;
    base.t = t;
    base.alpha = alpha;
    add_basis_slots(base);

    uint32_t logn = ceil_log2(n);
    auto prefix = [&](uint32_t a) { return segment_template(n, 0, a); };

    std::vector<BitString> rhat;
    // Interval questions "> a", "> b", "> mid" over the dyadic tree, breadth
    // first; questions "> 0" and "> n" need no slot.
    std::deque<std::pair<uint32_t, uint32_t>> queue{{0, n}};
    while (!queue.empty()) {
        auto [a, b] = queue.front();
        queue.pop_front();
        uint32_t mid = (a + b) / 2;
        if (a > 0) rhat.push_back(prefix(a));
        if (b < n) rhat.push_back(prefix(b));
        rhat.push_back(prefix(mid));
        if (mid - a >= 2) queue.emplace_back(a, mid);
        if (b - mid >= 2) queue.emplace_back(mid, b);
    }
    // Unit-interval questions, each provisioned 2*c*log2(n) times.
    for (uint32_t a = 0; a + 1 <= n; ++a)
        for (uint32_t rep = 0; rep < 2 * c * logn; ++rep) {
            if (a > 0) rhat.push_back(prefix(a));
            if (a + 1 < n) rhat.push_back(prefix(a + 1));
        }

    uint32_t copies = alpha * c * logn;
    for (uint32_t j = 0; j < t; ++j) add_package(base, rhat, copies);
    base.build_template_index();
    return base;
}

BaseSpec build_ahs_base(uint32_t n, uint32_t alpha, uint32_t t) {
    if (n < 2) throw std::invalid_argument("build_ahs_base: n >= 2 required");
    if (alpha < 1 || t < 1) throw std::invalid_argument("build_ahs_base: alpha, t >= 1");
    BaseSpec base;
    base.n = n;
    base.t = t;
    base.alpha = alpha;
    add_basis_slots(base);
    std::vector<BitString> rhat;
    for (uint32_t w = n; w >= 1; --w)
        for (uint32_t p = 1; p + w - 1 <= n; ++p) rhat.push_back(segment_template(n, p - 1, p + w - 1));
    for (uint32_t j = 0; j < t; ++j) add_package(base, rhat, alpha);
    base.build_template_index();
    return base;
}

Sample sample(const BaseSpec& base, Rng& rng) {
    Sample s;
    s.base = &base;
    s.strings.reserve(base.m());
    for (const auto& slot : base.slots) {
        if (slot.kind == SlotKind::Fixed) {
            s.strings.push_back(slot.value);
        } else {
            BitString v(base.n);
            for (uint32_t p = 1; p <= base.n; ++p)
                if (slot.value.bit(p) && rng.next_bit()) v.set_bit(p, true);
            s.strings.push_back(std::move(v));
        }
    }
    return s;
}

void Sample::validate() const {
    if (!base) throw std::invalid_argument("Sample: missing base");
    if (strings.size() != base->m()) throw std::invalid_argument("Sample: wrong string count");
    for (uint32_t idx = 1; idx <= base->m(); ++idx) {
        const Slot& sl = base->slot(idx);
        const BitString& v = string_at(idx);
        if (sl.kind == SlotKind::Fixed) {
            if (v != sl.value) throw std::invalid_argument("Sample: fixed slot mismatch");
        } else if (!(v & sl.value.complement()).is_zero()) {
            throw std::invalid_argument("Sample: bits outside template support");
        }
    }
}

nlohmann::ordered_json Sample::to_json() const {
    nlohmann::ordered_json j;
    j["base_hash"] = base ? base->hash() : 0;
    std::vector<std::string> strs;
    strs.reserve(strings.size());
    for (const auto& s : strings) strs.push_back(s.str());
    j["strings"] = std::move(strs);
    return j;
}

}  // namespace oideg
