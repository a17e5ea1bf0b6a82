#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oideg/bitstring.hpp"

namespace oideg {

using Rational = boost::multiprecision::cpp_rational;

Rational rational_from_string(const std::string& s);  // "1/3", "0.25", "2"
std::string rational_to_string(const Rational& r);

// A promise function: explicit domain points over {0,1}^N with output bits.
struct PartialBoolFn {
    uint32_t arity = 0;
    std::vector<std::pair<BitString, uint8_t>> domain;
    std::string label;

    void validate() const;  // lengths, distinctness, consistent duplicates
};

// Built-in instances. Input orderings are documented in the implementations
// and frozen by tests.
PartialBoolFn make_parity(uint32_t n);
PartialBoolFn make_gt_table(uint32_t n);  // total comparison table on (i, x), arity 2n
PartialBoolFn make_os(uint32_t n);        // arity 2^n
PartialBoolFn make_hs(uint32_t n);        // arity 2^(n+1) - 1
PartialBoolFn make_ahs(uint32_t n);       // arity 2^(n+2) - n - 4

enum class BoundMode : uint8_t { Full, DomainOnly };
enum class LpBackend : uint8_t { Auto, Rational, Float };

struct AdegCaps {
    uint32_t full_arity = 16;        // Full mode enumerates 2^N ambient points
    uint64_t monomials = 200'000;    // C(N, <= d) bound
    uint64_t domain_points = 70'000;
};

struct DegreeQuery {
    const PartialBoolFn* f = nullptr;
    uint32_t d = 0;
    Rational epsilon;
    BoundMode mode = BoundMode::Full;
    LpBackend backend = LpBackend::Auto;
    AdegCaps caps;
};

struct Certificate {
    std::vector<std::vector<uint32_t>> monomials;  // 1-based variable sets
    std::vector<Rational> coeffs;
    Rational eval(const BitString& point) const;
    uint64_t hash() const;
};

struct FeasibleResult {
    bool feasible = false;
    std::string backend;  // "rational" or "float"
    std::optional<Certificate> certificate;
};

// Decides whether some multilinear polynomial of degree <= d meets the
// epsilon-approximation constraints. Returned certificates are re-verified
// against every constraint before the call reports feasible.
FeasibleResult feasible(const DegreeQuery& q);

uint32_t min_degree(const PartialBoolFn& f, const Rational& eps, BoundMode mode,
                    LpBackend backend = LpBackend::Auto, const AdegCaps& caps = {});

struct ThresholdResult {
    bool feasible = false;
    Rational margin;
    std::string backend;
    std::optional<Certificate> certificate;
};

// Sign representation with the coefficient 1-norm capped at 1: feasible iff
// some degree-d polynomial attains a strictly positive margin.
ThresholdResult threshold_feasible(const PartialBoolFn& f, uint32_t d,
                                   LpBackend backend = LpBackend::Auto, const AdegCaps& caps = {});

// Exact check of a certificate against the approximation constraints, with a
// slack `tol` for float-derived certificates (0 for exact).
bool verify_certificate(const PartialBoolFn& f, const Certificate& cert, const Rational& eps,
                        BoundMode mode, const Rational& tol);

}  // namespace oideg
