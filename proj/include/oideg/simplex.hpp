#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oideg {

enum class LpStatus : uint8_t { Optimal, Infeasible, Unbounded };

enum class Rel : uint8_t { Le, Ge, Eq };

template <typename T>
struct LpRow {
    std::vector<T> a;
    Rel rel = Rel::Le;
    T b{};
};

// max objective . y  subject to rows, y >= 0.
template <typename T>
struct LinearProgram {
    uint32_t nvars = 0;
    std::vector<LpRow<T>> rows;
    std::vector<T> objective;  // size nvars (missing = 0)
};

template <typename T>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    T objective{};
    std::vector<T> x;
    uint64_t pivots = 0;
};

// Dense two-phase simplex. With eps == 0 comparisons are exact and Bland's
// rule guarantees termination; with a positive eps (floating point) Dantzig
// pricing is used first and the rule switches to Bland past half the pivot cap.
template <typename T>
class SimplexSolver {
  public:
    explicit SimplexSolver(T eps = T{}, uint64_t max_pivots = 2'000'000)
        : eps_(eps), max_pivots_(max_pivots) {}

    LpResult<T> solve(const LinearProgram<T>& lp) {
        build(lp);
        LpResult<T> res;
        // Phase I: maximize -sum(artificials); feasible iff the sum reaches 0.
        if (nart_ > 0) {
            std::vector<T> phase1_cost(ncols_, T{});
            for (uint32_t j = art_begin_; j < ncols_; ++j) phase1_cost[j] = T{-1};
            T opt = run(phase1_cost, res.pivots, /*ban_artificials=*/false);
            if (opt < T{} - eps_) {
                res.status = LpStatus::Infeasible;
                res.objective = opt;
                return res;
            }
            purge_artificials();
        }
        // Phase II: the real objective over structural and slack columns.
        std::vector<T> cost(ncols_, T{});
        for (uint32_t j = 0; j < lp.nvars && j < cost.size(); ++j)
            cost[j] = j < lp.objective.size() ? lp.objective[j] : T{};
        T opt = run(cost, res.pivots, /*ban_artificials=*/true);
        if (unbounded_) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.objective = opt;
        res.x.assign(lp.nvars, T{});
        for (uint32_t i = 0; i < nrows_; ++i)
            if (basis_[i] < lp.nvars) res.x[basis_[i]] = rhs_[i];
        return res;
    }

  private:
    // A Ge row with b <= 0 flips into a slack-basic Le row, so artificials
    // are only spent on equalities and strictly positive Ge rows.
    static bool should_flip(const LpRow<T>& row) {
        return row.b < T{} || (row.rel == Rel::Ge && row.b == T{});
    }

    void build(const LinearProgram<T>& lp) {
        nrows_ = static_cast<uint32_t>(lp.rows.size());
        uint32_t nslack = 0, nart = 0;
        for (const auto& row : lp.rows) {
            Rel rel = row.rel;
            if (should_flip(row) && rel != Rel::Eq) rel = rel == Rel::Le ? Rel::Ge : Rel::Le;
            if (rel != Rel::Eq) ++nslack;
            if (rel != Rel::Le) ++nart;  // Ge and Eq need an artificial
        }
        ncols_ = lp.nvars + nslack + nart;
        art_begin_ = lp.nvars + nslack;
        nart_ = nart;
        tab_.assign(nrows_, std::vector<T>(ncols_, T{}));
        rhs_.assign(nrows_, T{});
        basis_.assign(nrows_, 0);
        uint32_t slack_at = lp.nvars, art_at = art_begin_;
        for (uint32_t i = 0; i < nrows_; ++i) {
            const auto& row = lp.rows[i];
            bool flip = should_flip(row);
            T sign = flip ? T{-1} : T{1};
            for (uint32_t j = 0; j < lp.nvars; ++j)
                tab_[i][j] = j < row.a.size() ? sign * row.a[j] : T{};
            rhs_[i] = sign * row.b;
            Rel rel = row.rel;
            if (flip && rel != Rel::Eq) rel = rel == Rel::Le ? Rel::Ge : Rel::Le;
            if (rel == Rel::Le) {
                tab_[i][slack_at] = T{1};
                basis_[i] = slack_at++;
            } else if (rel == Rel::Ge) {
                tab_[i][slack_at] = T{-1};
                ++slack_at;
                tab_[i][art_at] = T{1};
                basis_[i] = art_at++;
            } else {
                tab_[i][art_at] = T{1};
                basis_[i] = art_at++;
            }
        }
        unbounded_ = false;
    }

    // Runs simplex for `cost`, returns the optimum.
    T run(const std::vector<T>& cost, uint64_t& pivots, bool ban_artificials) {
        std::vector<T> red(cost);
        T obj{};
        for (uint32_t i = 0; i < nrows_; ++i) {
            const T& cb = cost[basis_[i]];
            if (cb == T{}) continue;
            obj += cb * rhs_[i];
            for (uint32_t j = 0; j < ncols_; ++j) red[j] -= cb * tab_[i][j];
        }
        unbounded_ = false;
        uint64_t local = 0;
        // Dantzig pricing first for speed; Bland after the threshold so the
        // exact backend cannot cycle.
        uint64_t bland_after = 4ull * (nrows_ + ncols_) + 64;
        while (true) {
            if (pivots >= max_pivots_)
                throw std::runtime_error("simplex: pivot cap exceeded");
            bool bland = local > bland_after;
            uint32_t enter = ncols_;
            if (bland) {
                for (uint32_t j = 0; j < ncols_; ++j) {
                    if (ban_artificials && j >= art_begin_) break;
                    if (red[j] > eps_) {
                        enter = j;
                        break;
                    }
                }
            } else {
                T best{};
                for (uint32_t j = 0; j < ncols_; ++j) {
                    if (ban_artificials && j >= art_begin_) break;
                    if (red[j] > eps_ && (enter == ncols_ || red[j] > best)) {
                        best = red[j];
                        enter = j;
                    }
                }
            }
            if (enter == ncols_) return obj;
            uint32_t leave = nrows_;
            for (uint32_t i = 0; i < nrows_; ++i) {
                if (tab_[i][enter] <= eps_) continue;
                if (leave == nrows_) {
                    leave = i;
                    continue;
                }
                T lhs = rhs_[i] * tab_[leave][enter];
                T rhs = rhs_[leave] * tab_[i][enter];
                if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
            }
            if (leave == nrows_) {
                unbounded_ = true;
                return obj;
            }
            pivot(leave, enter, red, obj);
            ++pivots;
            ++local;
        }
    }

    void pivot(uint32_t r, uint32_t s, std::vector<T>& red, T& obj) {
        T inv = T{1} / tab_[r][s];
        for (uint32_t j = 0; j < ncols_; ++j) tab_[r][j] *= inv;
        rhs_[r] *= inv;
        tab_[r][s] = T{1};
        for (uint32_t i = 0; i < nrows_; ++i) {
            if (i == r) continue;
            T f = tab_[i][s];
            if (f == T{}) continue;
            for (uint32_t j = 0; j < ncols_; ++j) tab_[i][j] -= f * tab_[r][j];
            rhs_[i] -= f * rhs_[r];
            tab_[i][s] = T{};
        }
        T f = red[s];
        if (f != T{}) {
            for (uint32_t j = 0; j < ncols_; ++j) red[j] -= f * tab_[r][j];
            obj += f * rhs_[r];
            red[s] = T{};
        }
        basis_[r] = s;
    }

    // After phase I: pivot basic artificials out, dropping redundant rows.
    void purge_artificials() {
        for (uint32_t i = 0; i < nrows_;) {
            if (basis_[i] < art_begin_) {
                ++i;
                continue;
            }
            uint32_t s = ncols_;
            for (uint32_t j = 0; j < art_begin_; ++j)
                if (!(tab_[i][j] <= eps_ && tab_[i][j] >= T{} - eps_)) {
                    s = j;
                    break;
                }
            if (s == ncols_) {
                tab_.erase(tab_.begin() + i);
                rhs_.erase(rhs_.begin() + i);
                basis_.erase(basis_.begin() + i);
                --nrows_;
            } else {
                std::vector<T> dummy(ncols_, T{});
                T dummy_obj{};
                pivot(i, s, dummy, dummy_obj);
                ++i;
            }
        }
    }

    T eps_;
    uint64_t max_pivots_;
    uint32_t nrows_ = 0, ncols_ = 0, art_begin_ = 0, nart_ = 0;
    std::vector<std::vector<T>> tab_;
    std::vector<T> rhs_;
    std::vector<uint32_t> basis_;
    bool unbounded_ = false;
};

}  // namespace oideg
