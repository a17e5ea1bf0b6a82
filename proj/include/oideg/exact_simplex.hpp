#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "oideg/simplex.hpp"

namespace oideg {

// Exact two-phase simplex over the rationals with lrs-style integer pivoting:
// the tableau holds integer numerators over one common denominator (the last
// pivot), so updates are gcd-free and divisions are exact. Dantzig pricing
// with a switch to Bland's rule keeps it from cycling.
class ExactSimplex {
    using Int = boost::multiprecision::cpp_int;
    using Rat = boost::multiprecision::cpp_rational;

  public:
    explicit ExactSimplex(uint64_t max_pivots = 2'000'000) : max_pivots_(max_pivots) {}

    LpResult<Rat> solve(const LinearProgram<Rat>& lp) {
        build(lp);
        LpResult<Rat> res;
        if (nart_ > 0) {
            load_phase1_cost();
            run(res.pivots, /*ban_artificials=*/false);
            if (cost_[ncols_] != 0) {  // -sum(artificials) < 0
                res.status = LpStatus::Infeasible;
                res.objective = Rat(cost_[ncols_], det_);
                return res;
            }
            purge_artificials();
        }
        load_phase2_cost(lp);
        run(res.pivots, /*ban_artificials=*/true);
        if (unbounded_) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.x.assign(lp.nvars, Rat(0));
        for (uint32_t i = 0; i < nrows_; ++i)
            if (basis_[i] < lp.nvars) res.x[basis_[i]] = Rat(tab_[i][ncols_], det_);
        Rat obj(0);
        for (uint32_t j = 0; j < lp.nvars && j < lp.objective.size(); ++j)
            obj += lp.objective[j] * res.x[j];
        res.objective = obj;
        return res;
    }

  private:
    static bool should_flip(const LpRow<Rat>& row) {
        return row.b < 0 || (row.rel == Rel::Ge && row.b == 0);
    }

    void build(const LinearProgram<Rat>& lp) {
        nrows_ = static_cast<uint32_t>(lp.rows.size());
        uint32_t nslack = 0, nart = 0;
        for (const auto& row : lp.rows) {
            Rel rel = row.rel;
            if (should_flip(row) && rel != Rel::Eq) rel = rel == Rel::Le ? Rel::Ge : Rel::Le;
            if (rel != Rel::Eq) ++nslack;
            if (rel != Rel::Le) ++nart;
        }
        ncols_ = lp.nvars + nslack + nart;  // rhs lives at column ncols_
        art_begin_ = lp.nvars + nslack;
        nart_ = nart;
        nvars_ = lp.nvars;
        det_ = 1;
        tab_.assign(nrows_, std::vector<Int>(ncols_ + 1, Int(0)));
        basis_.assign(nrows_, 0);
        uint32_t slack_at = lp.nvars, art_at = art_begin_;
        for (uint32_t i = 0; i < nrows_; ++i) {
            const auto& row = lp.rows[i];
            bool flip = should_flip(row);
            // Scale the row to integers; positive scaling keeps the relation.
            Int scale = denominator(row.b);
            for (const auto& a : row.a) scale = lcm(scale, denominator(a));
            Int sign = flip ? -1 : 1;
            for (uint32_t j = 0; j < lp.nvars; ++j)
                if (j < row.a.size())
                    tab_[i][j] = sign * numerator(row.a[j]) * (scale / denominator(row.a[j]));
            tab_[i][ncols_] = sign * numerator(row.b) * (scale / denominator(row.b));
            Rel rel = row.rel;
            if (flip && rel != Rel::Eq) rel = rel == Rel::Le ? Rel::Ge : Rel::Le;
            if (rel == Rel::Le) {
                tab_[i][slack_at] = scale;
                basis_[i] = slack_at++;
            } else if (rel == Rel::Ge) {
                tab_[i][slack_at] = -scale;
                ++slack_at;
                tab_[i][art_at] = scale;
                basis_[i] = art_at++;
            } else {
                tab_[i][art_at] = scale;
                basis_[i] = art_at++;
            }
            // Normalize so the basic column holds det (= 1) exactly.
            Int piv = tab_[i][basis_[i]];
            if (piv != 1) {
                // Basic entry must equal det; divide the row by its own scale.
                // All entries share the factor `scale`, so this is exact.
                for (auto& v : tab_[i]) {
                    Int q = v / piv;
                    v = q;
                }
            }
        }
        unbounded_ = false;
    }

    void load_phase1_cost() {
        // Reduced costs for maximize(-sum artificials) with artificials basic:
        // row sum of the artificial rows; objective = -sum of their rhs.
        cost_.assign(ncols_ + 1, Int(0));
        for (uint32_t i = 0; i < nrows_; ++i) {
            if (basis_[i] < art_begin_) continue;
            for (uint32_t j = 0; j <= ncols_; ++j) cost_[j] += tab_[i][j];
        }
        for (uint32_t j = art_begin_; j < ncols_; ++j) cost_[j] = 0;
        cost_[ncols_] = -cost_[ncols_];
        for (uint32_t j = 0; j < art_begin_; ++j) {
            // Basic columns of non-artificial rows contribute zero already.
        }
        // Flip: stored cost row holds reduced costs; objective kept negated in
        // the rhs slot so `cost_[ncols_] == 0` iff all artificials are zero.
        for (uint32_t j = 0; j < ncols_; ++j) cost_[j] = cost_[j];
    }

    void load_phase2_cost(const LinearProgram<Rat>& lp) {
        // Integer-scale the objective, then subtract basic contributions.
        Int scale = 1;
        for (const auto& c : lp.objective) scale = lcm(scale, denominator(c));
        std::vector<Int> c(ncols_ + 1, Int(0));
        for (uint32_t j = 0; j < nvars_ && j < lp.objective.size(); ++j)
            c[j] = numerator(lp.objective[j]) * (scale / denominator(lp.objective[j]));
        // Reduced cost r = c*det - sum_i c[basis_i] * row_i (values over det).
        cost_.assign(ncols_ + 1, Int(0));
        for (uint32_t j = 0; j <= ncols_; ++j) cost_[j] = c[j] * det_;
        cost_[ncols_] = 0;
        for (uint32_t i = 0; i < nrows_; ++i) {
            const Int& cb = c[basis_[i]];
            if (cb == 0) continue;
            for (uint32_t j = 0; j <= ncols_; ++j) cost_[j] -= cb * tab_[i][j];
        }
        for (uint32_t i = 0; i < nrows_; ++i) cost_[basis_[i]] = 0;
        // cost_[ncols_] now holds -objective*det; negate to track objective.
        cost_[ncols_] = -cost_[ncols_];
        // Note: entries of cost_ are det-scaled twice relative to tab_; only
        // signs and ratios against each other are used during pricing.
    }

    void run(uint64_t& pivots, bool ban_artificials) {
        unbounded_ = false;
        uint64_t local = 0;
        uint64_t bland_after = 4ull * (nrows_ + ncols_) + 64;
        while (true) {
            if (pivots >= max_pivots_) throw std::runtime_error("simplex: pivot cap exceeded");
            bool bland = local > bland_after;
            uint32_t enter = ncols_;
            if (bland) {
                for (uint32_t j = 0; j < ncols_; ++j) {
                    if (ban_artificials && j >= art_begin_) break;
                    if (cost_[j] > 0) {
                        enter = j;
                        break;
                    }
                }
            } else {
                const Int* best = nullptr;
                for (uint32_t j = 0; j < ncols_; ++j) {
                    if (ban_artificials && j >= art_begin_) break;
                    if (cost_[j] > 0 && (!best || cost_[j] > *best)) {
                        best = &cost_[j];
                        enter = j;
                    }
                }
            }
            if (enter == ncols_) return;
            uint32_t leave = nrows_;
            for (uint32_t i = 0; i < nrows_; ++i) {
                if (tab_[i][enter] <= 0) continue;
                if (leave == nrows_) {
                    leave = i;
                    continue;
                }
                Int lhs = tab_[i][ncols_] * tab_[leave][enter];
                Int rhs = tab_[leave][ncols_] * tab_[i][enter];
                if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
            }
            if (leave == nrows_) {
                unbounded_ = true;
                return;
            }
            pivot(leave, enter);
            ++pivots;
            ++local;
        }
    }

    // Integer pivot: divide by the previous determinant; divisions are exact.
    void pivot(uint32_t r, uint32_t s) {
        Int piv = tab_[r][s];  // > 0 by the ratio test, so det_ stays > 0
        for (uint32_t i = 0; i < nrows_; ++i) {
            if (i == r) continue;
            auto& row = tab_[i];
            const Int& f = row[s];
            if (f == 0) {
                for (uint32_t j = 0; j <= ncols_; ++j) {
                    row[j] *= piv;
                    row[j] /= det_;
                }
            } else {
                const auto& pr = tab_[r];
                for (uint32_t j = 0; j <= ncols_; ++j) {
                    row[j] = (row[j] * piv - f * pr[j]) / det_;
                }
            }
            row[s] = 0;
        }
        {
            auto& row = cost_;
            const Int& f = row[s];
            if (f != 0) {
                const auto& pr = tab_[r];
                for (uint32_t j = 0; j <= ncols_; ++j) row[j] = (row[j] * piv - f * pr[j]) / det_;
                row[s] = 0;
            } else {
                for (uint32_t j = 0; j <= ncols_; ++j) {
                    row[j] *= piv;
                    row[j] /= det_;
                }
            }
        }
        det_ = piv;
        basis_[r] = s;
        tab_[r][s] = det_;
    }

    void purge_artificials() {
        for (uint32_t i = 0; i < nrows_;) {
            if (basis_[i] < art_begin_) {
                ++i;
                continue;
            }
            uint32_t s = ncols_;
            for (uint32_t j = 0; j < art_begin_; ++j)
                if (tab_[i][j] != 0) {
                    s = j;
                    break;
                }
            if (s == ncols_) {
                tab_.erase(tab_.begin() + i);
                basis_.erase(basis_.begin() + i);
                --nrows_;
            } else {
                // The basic artificial sits at value 0, so pivoting on any
                // nonzero structural entry keeps the point feasible.
                if (tab_[i][s] < 0)
                    for (auto& v : tab_[i]) v = -v;
                cost_.assign(ncols_ + 1, Int(0));  // no cost row yet in phase gap
                pivot(i, s);
                ++i;
            }
        }
    }

    uint64_t max_pivots_;
    uint32_t nrows_ = 0, ncols_ = 0, art_begin_ = 0, nart_ = 0, nvars_ = 0;
    Int det_ = 1;
    std::vector<std::vector<Int>> tab_;
    std::vector<Int> cost_;
    std::vector<uint32_t> basis_;
    bool unbounded_ = false;
};

}  // namespace oideg
