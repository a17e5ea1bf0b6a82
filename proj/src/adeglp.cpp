#include "oideg/adeglp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>

#include "oideg/classical.hpp"
#include "oideg/simplex.hpp"

namespace oideg {

namespace {

// Decimal integer parse; leading zeros must not flip cpp_int into octal.
boost::multiprecision::cpp_int parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational_from_string: empty integer");
    bool neg = s[0] == '-';
    size_t at = neg || s[0] == '+' ? 1 : 0;
    if (at == s.size()) throw std::invalid_argument("rational_from_string: bad integer " + s);
    boost::multiprecision::cpp_int v = 0;
    for (; at < s.size(); ++at) {
        if (s[at] < '0' || s[at] > '9')
            throw std::invalid_argument("rational_from_string: bad integer " + s);
        v = v * 10 + (s[at] - '0');
    }
    return neg ? -v : v;
}

}  // namespace

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        auto num = parse_int(s.substr(0, slash));
        auto den = parse_int(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational_from_string: zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        auto num = parse_int(s.substr(0, dot) + s.substr(dot + 1));
        boost::multiprecision::cpp_int den = 1;
        for (size_t k = 0; k < s.size() - dot - 1; ++k) den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_int(s));
}

std::string rational_to_string(const Rational& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

void PartialBoolFn::validate() const {
    std::unordered_set<uint64_t> seen;
    std::map<std::string, uint8_t> by_point;
    for (const auto& [pt, val] : domain) {
        if (pt.length() != arity) throw std::invalid_argument(label + ": point length != arity");
        if (val > 1) throw std::invalid_argument(label + ": value must be a bit");
        auto [it, fresh] = by_point.emplace(pt.str(), val);
        if (!fresh && it->second != val)
            throw std::invalid_argument(label + ": conflicting duplicate domain point");
    }
}

PartialBoolFn make_parity(uint32_t n) {
    if (n == 0 || n > 24) throw std::invalid_argument("make_parity: n in 1..24");
    PartialBoolFn f;
    f.arity = n;
    f.label = "parity_" + std::to_string(n);
    for (uint64_t v = 0; v < (1ull << n); ++v) {
        BitString x = BitString::from_value(n, v);
        f.domain.emplace_back(x, x.parity());
    }
    f.validate();
    return f;
}

PartialBoolFn make_gt_table(uint32_t n) {
    if (n == 0 || n > 12) throw std::invalid_argument("make_gt_table: n in 1..12");
    PartialBoolFn f;
    f.arity = 2 * n;
    f.label = "gt_" + std::to_string(n);
    for (uint64_t iv = 0; iv < (1ull << n); ++iv)
        for (uint64_t xv = 0; xv < (1ull << n); ++xv) {
            BitString point = BitString::from_value(2 * n, (iv << n) | xv);
            f.domain.emplace_back(point, xv <= iv ? 1 : 0);
        }
    f.validate();
    return f;
}

PartialBoolFn make_os(uint32_t n) {
    if (n == 0 || n > 16) throw std::invalid_argument("make_os: n in 1..16");
    PartialBoolFn f;
    uint32_t N = 1u << n;
    f.arity = N;
    f.label = "os_" + std::to_string(N);
    for (uint64_t k = 0; k < N; ++k) {
        BitString point(N);
        for (uint32_t pos = static_cast<uint32_t>(k) + 1; pos <= N; ++pos) point.set_bit(pos, true);
        f.domain.emplace_back(point, std::popcount(k) & 1u ? 1 : 0);
    }
    f.validate();
    return f;
}

namespace {

// All strings of length <= n, shortest first, lexicographic within a length.
std::vector<BitString> short_strings(uint32_t n) {
    std::vector<BitString> out;
    for (uint32_t len = 0; len <= n; ++len)
        for (uint64_t v = 0; v < (1ull << len); ++v) out.push_back(BitString::from_value(len, v));
    return out;
}

}  // namespace

PartialBoolFn make_hs(uint32_t n) {
    if (n == 0 || n > 12) throw std::invalid_argument("make_hs: n in 1..12");
    PartialBoolFn f;
    auto subs = short_strings(n);
    f.arity = static_cast<uint32_t>(subs.size());  // 2^(n+1) - 1
    f.label = "hs_" + std::to_string(f.arity);
    for (uint64_t xv = 0; xv < (1ull << n); ++xv) {
        BitString x = BitString::from_value(n, xv);
        BitString point(f.arity);
        for (uint32_t idx = 0; idx < subs.size(); ++idx)
            if (chi(subs[idx], x)) point.set_bit(idx + 1, true);
        f.domain.emplace_back(point, x.parity());
    }
    f.validate();
    return f;
}

PartialBoolFn make_ahs(uint32_t n) {
    if (n == 0 || n > 11) throw std::invalid_argument("make_ahs: n in 1..11");
    PartialBoolFn f;
    std::vector<std::pair<uint32_t, BitString>> inputs;  // (i, s), i ascending
    for (uint32_t i = 1; i <= n; ++i)
        for (uint32_t len = 0; len <= n - i + 1; ++len)
            for (uint64_t sv = 0; sv < (1ull << len); ++sv)
                inputs.emplace_back(i, BitString::from_value(len, sv));
    f.arity = static_cast<uint32_t>(inputs.size());  // 2^(n+2) - n - 4
    f.label = "ahs_" + std::to_string(f.arity);
    for (uint64_t xv = 0; xv < (1ull << n); ++xv) {
        BitString x = BitString::from_value(n, xv);
        BitString point(f.arity);
        for (uint32_t idx = 0; idx < inputs.size(); ++idx)
            if (phi(inputs[idx].first, inputs[idx].second, x)) point.set_bit(idx + 1, true);
        f.domain.emplace_back(point, x.parity());
    }
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// LP construction
// ---------------------------------------------------------------------------

namespace {

uint64_t monomial_count(uint32_t N, uint32_t d) {
    uint64_t total = 0, binom = 1;
    for (uint32_t k = 0; k <= std::min(d, N); ++k) {
        total += binom;
        if (total > (1ull << 62)) return total;
        binom = binom * (N - k) / (k + 1);
    }
    return total;
}

// Subsets of [N] of size <= d, size-ascending, each as sorted 1-based indices.
std::vector<std::vector<uint32_t>> enumerate_monomials(uint32_t N, uint32_t d, uint64_t cap) {
    if (monomial_count(N, d) > cap) throw std::invalid_argument("adeglp: monomial cap exceeded");
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur;
    auto rec = [&](auto&& self, uint32_t start) -> void {
        out.push_back(cur);
        if (cur.size() == d) return;
        for (uint32_t v = start; v <= N; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

bool monomial_value(const std::vector<uint32_t>& mono, const BitString& point) {
    for (uint32_t v : mono)
        if (!point.bit(v)) return false;
    return true;
}

// Ambient points not in the domain (Full mode boundedness rows).
std::vector<BitString> ambient_points(const PartialBoolFn& f, const AdegCaps& caps) {
    if (f.arity > caps.full_arity)
        throw std::invalid_argument("adeglp: Full mode capped at arity " +
                                    std::to_string(caps.full_arity));
    std::unordered_set<std::string> dom;
    for (const auto& [pt, val] : f.domain) dom.insert(pt.str());
    std::vector<BitString> out;
    for (uint64_t v = 0; v < (1ull << f.arity); ++v) {
        BitString p = BitString::from_value(f.arity, v);
        if (!dom.count(p.str())) out.push_back(p);
    }
    return out;
}

// Shared row assembly: coefficients enter as u - v pairs per monomial.
template <typename T>
void add_eval_row(LinearProgram<T>& lp, const std::vector<std::vector<uint32_t>>& monos,
                  const BitString& point, Rel rel, T bound, T scale = T{1}) {
    LpRow<T> row;
    row.a.assign(lp.nvars, T{});
    for (uint32_t k = 0; k < monos.size(); ++k)
        if (monomial_value(monos[k], point)) {
            row.a[2 * k] = scale;
            row.a[2 * k + 1] = -scale;
        }
    row.rel = rel;
    row.b = bound;
    lp.rows.push_back(std::move(row));
}

template <typename T>
T to_scalar(const Rational& r);

template <>
Rational to_scalar<Rational>(const Rational& r) {
    return r;
}

template <>
double to_scalar<double>(const Rational& r) {
    return static_cast<double>(r);
}

// Domain rows plus the ambient boundedness rows listed in `cuts`. Full-mode
// boundedness is enforced lazily: most ambient rows are slack at the optimum,
// so they enter only when a candidate polynomial actually violates them.
template <typename T>
LinearProgram<T> build_feasibility_lp(const DegreeQuery& q,
                                      const std::vector<std::vector<uint32_t>>& monos,
                                      const std::vector<BitString>& cuts) {
    const PartialBoolFn& f = *q.f;
    LinearProgram<T> lp;
    lp.nvars = static_cast<uint32_t>(2 * monos.size());
    lp.objective.assign(lp.nvars, T{});
    T eps = to_scalar<T>(q.epsilon);
    for (const auto& [pt, val] : f.domain) {
        T fv = val ? T{1} : T{0};
        add_eval_row(lp, monos, pt, Rel::Le, T(fv + eps));
        add_eval_row(lp, monos, pt, Rel::Ge, T(fv - eps));
    }
    for (const BitString& pt : cuts) {
        add_eval_row(lp, monos, pt, Rel::Le, T(T{1} + eps));
        add_eval_row(lp, monos, pt, Rel::Ge, T(T{0} - eps));
    }
    return lp;
}

Certificate extract_certificate(const std::vector<std::vector<uint32_t>>& monos,
                                const std::vector<Rational>& x) {
    Certificate cert;
    for (uint32_t k = 0; k < monos.size(); ++k) {
        Rational c = x[2 * k] - x[2 * k + 1];
        if (c != 0) {
            cert.monomials.push_back(monos[k]);
            cert.coeffs.push_back(c);
        }
    }
    return cert;
}

std::vector<Rational> doubles_to_rationals(const std::vector<double>& x) {
    std::vector<Rational> out;
    out.reserve(x.size());
    for (double v : x) out.emplace_back(v);
    return out;
}

}  // namespace

Rational Certificate::eval(const BitString& point) const {
    Rational acc = 0;
    for (uint32_t k = 0; k < monomials.size(); ++k)
        if (monomial_value(monomials[k], point)) acc += coeffs[k];
    return acc;
}

uint64_t Certificate::hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const std::string& s) {
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
    };
    for (uint32_t k = 0; k < monomials.size(); ++k) {
        for (uint32_t v : monomials[k]) mix(std::to_string(v) + ",");
        mix(":" + rational_to_string(coeffs[k]) + ";");
    }
    return h;
}

bool verify_certificate(const PartialBoolFn& f, const Certificate& cert, const Rational& eps,
                        BoundMode mode, const Rational& tol) {
    for (const auto& [pt, val] : f.domain) {
        Rational p = cert.eval(pt);
        Rational fv = val;
        if (abs(p - fv) > eps + tol) return false;
    }
    if (mode == BoundMode::Full) {
        AdegCaps caps;
        for (const BitString& pt : ambient_points(f, caps)) {
            Rational p = cert.eval(pt);
            if (p < -eps - tol || p > 1 + eps + tol) return false;
        }
    }
    return true;
}

namespace {

FeasibleResult feasible_rational(const DegreeQuery& q,
                                 const std::vector<std::vector<uint32_t>>& monos) {
    std::vector<BitString> ambient =
        q.mode == BoundMode::Full ? ambient_points(*q.f, q.caps) : std::vector<BitString>{};
    std::vector<BitString> cuts;
    std::vector<bool> cut_added(ambient.size(), false);
    FeasibleResult out;
    out.backend = "rational";
    while (true) {
        auto lp = build_feasibility_lp<Rational>(q, monos, cuts);
        SimplexSolver<Rational> solver;
        auto res = solver.solve(lp);
        if (res.status != LpStatus::Optimal) {
            // Infeasible with a subset of the rows stays infeasible with all.
            out.feasible = false;
            return out;
        }
        Certificate cert = extract_certificate(monos, res.x);
        bool added = false;
        Rational lo = -q.epsilon, hi = 1 + q.epsilon;
        for (size_t k = 0; k < ambient.size(); ++k) {
            if (cut_added[k]) continue;
            Rational v = cert.eval(ambient[k]);
            if (v < lo || v > hi) {
                cuts.push_back(ambient[k]);
                cut_added[k] = true;
                added = true;
            }
        }
        if (!added) {
            if (!verify_certificate(*q.f, cert, q.epsilon, q.mode, Rational(0)))
                throw std::logic_error("adeglp: rational certificate failed re-verification");
            out.feasible = true;
            out.certificate = std::move(cert);
            return out;
        }
    }
}

const Rational kFloatTol{1, 1'000'000'000};     // certificate slack, 1e-9
const Rational kEscalateMargin{1, 1'000'000};   // phase-1 residual below this escalates

FeasibleResult feasible_float(const DegreeQuery& q,
                              const std::vector<std::vector<uint32_t>>& monos) {
    std::vector<BitString> ambient =
        q.mode == BoundMode::Full ? ambient_points(*q.f, q.caps) : std::vector<BitString>{};
    std::vector<BitString> cuts;
    std::vector<bool> cut_added(ambient.size(), false);
    FeasibleResult out;
    out.backend = "float";
    double eps = static_cast<double>(q.epsilon);
    while (true) {
        auto lp = build_feasibility_lp<double>(q, monos, cuts);
        SimplexSolver<double> solver(1e-9);
        auto res = solver.solve(lp);
        if (res.status != LpStatus::Optimal) {
            // Infeasible at tiny margins is not trustworthy in floating point.
            if (res.status == LpStatus::Infeasible && Rational(-res.objective) < kEscalateMargin)
                return feasible_rational(q, monos);
            out.feasible = false;
            return out;
        }
        bool added = false;
        auto eval = [&](const BitString& pt) {
            double acc = 0;
            for (uint32_t k = 0; k < monos.size(); ++k)
                if (monomial_value(monos[k], pt)) acc += res.x[2 * k] - res.x[2 * k + 1];
            return acc;
        };
        for (size_t k = 0; k < ambient.size(); ++k) {
            if (cut_added[k]) continue;
            double v = eval(ambient[k]);
            if (v < -eps - 1e-9 || v > 1 + eps + 1e-9) {
                cuts.push_back(ambient[k]);
                cut_added[k] = true;
                added = true;
            }
        }
        if (added) continue;
        Certificate cert = extract_certificate(monos, doubles_to_rationals(res.x));
        if (verify_certificate(*q.f, cert, q.epsilon, q.mode, kFloatTol)) {
            out.feasible = true;
            out.certificate = std::move(cert);
            return out;
        }
        return feasible_rational(q, monos);  // certificate did not survive scrutiny
    }
}

}  // namespace

FeasibleResult feasible(const DegreeQuery& q) {
    if (!q.f) throw std::invalid_argument("feasible: missing function");
    q.f->validate();
    if (q.f->domain.size() > q.caps.domain_points)
        throw std::invalid_argument("feasible: domain cap exceeded");
    if (q.epsilon < 0 || q.epsilon >= Rational(1, 2))
        throw std::invalid_argument("feasible: epsilon must be in [0, 1/2)");
    auto monos = enumerate_monomials(q.f->arity, std::min(q.d, q.f->arity), q.caps.monomials);
    switch (q.backend) {
        case LpBackend::Rational: return feasible_rational(q, monos);
        case LpBackend::Float: return feasible_float(q, monos);
        case LpBackend::Auto:
        default: {
            uint64_t rows = 2ull * q.f->domain.size();
            if (q.mode == BoundMode::Full && q.f->arity < 62) rows += 2ull << q.f->arity;
            bool small = rows <= 4000 && monos.size() <= 1500;
            return small ? feasible_rational(q, monos) : feasible_float(q, monos);
        }
    }
}

uint32_t min_degree(const PartialBoolFn& f, const Rational& eps, BoundMode mode, LpBackend backend,
                    const AdegCaps& caps) {
    for (uint32_t d = 0; d <= f.arity; ++d) {
        DegreeQuery q;
        q.f = &f;
        q.d = d;
        q.epsilon = eps;
        q.mode = mode;
        q.backend = backend;
        q.caps = caps;
        if (feasible(q).feasible) return d;
    }
    throw std::logic_error("min_degree: no degree worked; multilinear interpolation must exist");
}

ThresholdResult threshold_feasible(const PartialBoolFn& f, uint32_t d, LpBackend backend,
                                   const AdegCaps& caps) {
    (void)backend;  // the margin decision always runs on the exact backend
    f.validate();
    auto monos = enumerate_monomials(f.arity, std::min(d, f.arity), caps.monomials);
    // Variables: u_k, v_k per monomial, then margin split mu+ / mu-.
    LinearProgram<Rational> lp;
    uint32_t ncoef = static_cast<uint32_t>(2 * monos.size());
    lp.nvars = ncoef + 2;
    lp.objective.assign(lp.nvars, Rational(0));
    lp.objective[ncoef] = 1;
    lp.objective[ncoef + 1] = -1;
    for (const auto& [pt, val] : f.domain) {
        // sign * (2 p(y) - 1) <= -margin
        Rational sign = val ? -1 : 1;
        LpRow<Rational> row;
        row.a.assign(lp.nvars, Rational(0));
        for (uint32_t k = 0; k < monos.size(); ++k)
            if (monomial_value(monos[k], pt)) {
                row.a[2 * k] = 2 * sign;
                row.a[2 * k + 1] = -2 * sign;
            }
        row.a[ncoef] = 1;
        row.a[ncoef + 1] = -1;
        row.rel = Rel::Le;
        row.b = sign;
        lp.rows.push_back(std::move(row));
    }
    LpRow<Rational> norm;
    norm.a.assign(lp.nvars, Rational(0));
    for (uint32_t k = 0; k < ncoef; ++k) norm.a[k] = 1;
    norm.rel = Rel::Le;
    norm.b = 1;
    lp.rows.push_back(std::move(norm));

    SimplexSolver<Rational> solver;
    auto res = solver.solve(lp);
    if (res.status != LpStatus::Optimal)
        throw std::logic_error("threshold_feasible: margin program must be solvable");
    ThresholdResult out;
    out.backend = "rational";
    out.margin = res.x[ncoef] - res.x[ncoef + 1];
    out.feasible = out.margin > 0;
    if (out.feasible) {
        Certificate cert = extract_certificate(monos, res.x);
        for (const auto& [pt, val] : f.domain) {
            Rational g = 2 * cert.eval(pt) - 1;
            Rational sign = val ? -1 : 1;
            if (!(sign * g <= -out.margin))
                throw std::logic_error("threshold_feasible: certificate failed re-verification");
        }
        out.certificate = std::move(cert);
    }
    return out;
}

}  // namespace oideg
