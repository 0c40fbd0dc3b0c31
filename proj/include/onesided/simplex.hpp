// Copyright (c) 2026 The onesided authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONESIDED_SIMPLEX_HPP
#define ONESIDED_SIMPLEX_HPP

#include <optional>
#include <ostream>
#include <utility>
#include <variant>
#include <vector>

#include "onesided/linalg.hpp"

namespace onesided {

/// Equality-form linear program: maximize c.x subject to A x = b, x >= 0,
/// over the ordered field Q(theta).
struct LPProblem {
    Matrix a;
    std::vector<Scalar> b;
    std::vector<Scalar> c;
};

struct LPOptimal {
    std::vector<Scalar> x;
    Scalar value;
    /// Dual multipliers y for the equality rows: y.A_j >= c_j for every
    /// column j, and y.b == value.
    std::vector<Scalar> duals;
};

struct LPInfeasible {
    /// Farkas certificate: y.A >= 0 componentwise and y.b < 0, both exact.
    std::vector<Scalar> y;
};

struct LPUnbounded {
    std::vector<Scalar> feasible_x;
    /// Improving ray: A.ray = 0, ray >= 0, c.ray > 0.
    std::vector<Scalar> ray;
};

using LPResult = std::variant<LPOptimal, LPInfeasible, LPUnbounded>;

/// Optional pivot log sink (enabled by the CLI --trace-steps flag).
inline std::ostream*& simplex_trace() {
    static std::ostream* sink = nullptr;
    return sink;
}

namespace detail {

class SimplexTableau {
  public:
    SimplexTableau(const LPProblem& p) : n_(p.a.cols()), m_(p.a.rows()), ctx_(p.a.ctx()) {
        if (static_cast<int>(p.b.size()) != m_ || static_cast<int>(p.c.size()) != n_)
            throw InputError("LP dimensions inconsistent");
        row_sign_.assign(m_, 1);
        t_.assign(m_, std::vector<Scalar>(n_ + m_ + 1, Scalar(ctx_, 0)));
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            int s = p.b[i].sign() < 0 ? -1 : 1;
            row_sign_[i] = s;
            Rat sr(s);
            for (int j = 0; j < n_; ++j) t_[i][j] = p.a.at(i, j) * sr;
            t_[i][n_ + i] = Scalar(ctx_, 1);
            t_[i][n_ + m_] = p.b[i] * sr;
            basis_[i] = n_ + i;
        }
    }

    /// Runs phase 1 then phase 2 and packages the result.
    LPResult solve(const LPProblem& p) {
        // Phase 1: maximize -sum(artificials).
        std::vector<Scalar> cost1(n_ + m_, Scalar(ctx_, 0));
        for (int k = 0; k < m_; ++k) cost1[n_ + k] = Scalar(ctx_, -1);
        run(cost1, /*allow_artificial_entering=*/false);
        Scalar v1 = objective_value(cost1);
        if (v1.sign() < 0) {
            // Infeasible; duals of phase 1 are the Farkas certificate.
            std::vector<Scalar> y = duals(cost1);
            return LPInfeasible{std::move(y)};
        }
        drive_out_artificials();
        std::vector<Scalar> cost2(n_ + m_, Scalar(ctx_, 0));
        for (int j = 0; j < n_; ++j) cost2[j] = p.c[j];
        std::optional<int> unbounded_col = run(cost2, /*allow_artificial_entering=*/false);
        if (unbounded_col) {
            std::vector<Scalar> ray(n_, Scalar(ctx_, 0));
            ray[*unbounded_col] = Scalar(ctx_, 1);
            for (std::size_t i = 0; i < t_.size(); ++i)
                if (basis_[i] < n_) ray[basis_[i]] = -t_[i][*unbounded_col];
            return LPUnbounded{current_x(), std::move(ray)};
        }
        return LPOptimal{current_x(), objective_value(cost2), duals(cost2)};
    }

  private:
    std::vector<Scalar> current_x() const {
        std::vector<Scalar> x(n_, Scalar(ctx_, 0));
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (basis_[i] < n_) x[basis_[i]] = t_[i].back();
        return x;
    }

    Scalar objective_value(const std::vector<Scalar>& cost) const {
        Scalar v(ctx_, 0);
        for (std::size_t i = 0; i < t_.size(); ++i) v = v + cost[basis_[i]] * t_[i].back();
        return v;
    }

    /// Dual multipliers for the original rows, read from the artificial
    /// block (which accumulates the row-operation matrix), unflipped.
    std::vector<Scalar> duals(const std::vector<Scalar>& cost) const {
        std::vector<Scalar> y(m_, Scalar(ctx_, 0));
        for (int k = 0; k < m_; ++k) {
            Scalar acc(ctx_, 0);
            for (std::size_t i = 0; i < t_.size(); ++i) acc = acc + cost[basis_[i]] * t_[i][n_ + k];
            y[k] = acc * Rat(row_sign_[k]);
        }
        return y;
    }

    Scalar reduced_cost(const std::vector<Scalar>& cost, int j) const {
        Scalar acc = cost[j];
        for (std::size_t i = 0; i < t_.size(); ++i) acc = acc - cost[basis_[i]] * t_[i][j];
        return acc;
    }

    /// Bland's rule iteration until optimal (returns nullopt) or unbounded
    /// (returns the entering column with no blocking row).
    std::optional<int> run(const std::vector<Scalar>& cost, bool allow_artificial_entering) {
        const long pivot_guard = 2000000;
        for (long iter = 0; iter < pivot_guard; ++iter) {
            int enter = -1;
            int limit = allow_artificial_entering ? n_ + m_ : n_;
            for (int j = 0; j < limit; ++j) {
                if (is_basic(j)) continue;
                if (reduced_cost(cost, j).sign() > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return std::nullopt;
            int leave_row = -1;
            Scalar best_ratio(ctx_, 0);
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][enter].sign() <= 0) continue;
                Scalar ratio = t_[i].back() / t_[i][enter];
                if (leave_row < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave_row])) {
                    leave_row = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leave_row < 0) return enter;  // unbounded direction
            if (simplex_trace())
                *simplex_trace() << "pivot enter=" << enter << " leave=" << basis_[leave_row]
                                 << " row=" << leave_row << "\n";
            pivot(leave_row, enter);
        }
        throw InternalError("simplex pivot guard exceeded");
    }

    bool is_basic(int j) const {
        for (int b : basis_)
            if (b == j) return true;
        return false;
    }

    void pivot(int row, int col) {
        Scalar inv = t_[row][col].inverse();
        for (auto& v : t_[row]) v = v * inv;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (static_cast<int>(i) == row || t_[i][col].is_zero()) continue;
            Scalar f = t_[i][col];
            for (std::size_t j = 0; j < t_[i].size(); ++j) t_[i][j] = t_[i][j] - f * t_[row][j];
        }
        basis_[row] = col;
    }

    /// Replaces basic artificials by structural columns where possible and
    /// deletes redundant (all-zero) rows.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            int piv = -1;
            for (int j = 0; j < n_; ++j)
                if (!t_[i][j].is_zero()) {
                    piv = j;
                    break;
                }
            if (piv >= 0) {
                pivot(static_cast<int>(i), piv);
                ++i;
            } else {
                // Redundant constraint: structural part of the row is zero.
                t_.erase(t_.begin() + static_cast<long>(i));
                basis_.erase(basis_.begin() + static_cast<long>(i));
            }
        }
    }

    int n_, m_;
    Ctx ctx_;
    std::vector<std::vector<Scalar>> t_;
    std::vector<int> basis_;
    std::vector<int> row_sign_;
};

}  // namespace detail

inline LPResult solve_lp(const LPProblem& p) {
    detail::SimplexTableau tab(p);
    return tab.solve(p);
}

/// Exactly one of the Gordan alternatives for a matrix A (rows indexed by m,
/// columns by n): either y >= 0, y != 0 with A y^t = 0, or an integer row
/// vector x with x A strictly positive in every coordinate.
struct GordanResult {
    std::optional<std::vector<Scalar>> y;  // alternative (i)
    std::optional<std::vector<Int>> x;     // alternative (ii)
};

namespace detail {

/// Rounds a Q(theta) row vector to a nearby integer vector preserving
/// x.A >> 0, given an exact positive margin: u.A >= margin componentwise.
inline std::vector<Int> integerize_positive_combination(const Matrix& a, const std::vector<Scalar>& u,
                                                        const Scalar& margin) {
    const Ctx& ctx = a.ctx();
    int m = a.rows(), n = a.cols();
    // Exact rational upper bound on |entries| and lower bound on the margin.
    Rat entry_bound(1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            auto [lo, hi] = a.at(i, j).bounds();
            Rat mag = std::max(abs(lo), abs(hi));
            if (mag > entry_bound) entry_bound = mag;
        }
    Rat margin_lb;
    for (int extra = 0;; extra += 4) {
        auto [lo, hi] = margin.bounds(extra);
        if (lo > 0) {
            margin_lb = lo;
            break;
        }
        if (extra > 4000) throw InternalError("gordan: margin refinement stalled");
    }
    Rat tol = margin_lb / (Rat(2 * std::max(m, 1)) * entry_bound);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Rat> r(m);
        for (int i = 0; i < m; ++i) r[i] = u[i].approx(tol);
        std::vector<Int> x = to_primitive_integer(r);
        // Restore the orientation of u (to_primitive_integer normalizes the
        // first nonzero entry positive, which may flip the vector).
        for (int i = 0; i < m; ++i) {
            if (x[i] == 0 && r[i] == 0) continue;
            if ((x[i] < 0 && r[i] > 0) || (x[i] > 0 && r[i] < 0))
                for (Int& v : x) v = -v;
            break;
        }
        std::vector<Scalar> xs(m, Scalar(ctx, 0));
        for (int i = 0; i < m; ++i) xs[i] = Scalar(ctx, make_rat(x[i], Int(1)));
        std::vector<Scalar> prod = a.apply_left(xs);
        bool ok = true;
        for (const Scalar& v : prod)
            if (v.sign() <= 0) {
                ok = false;
                break;
            }
        if (ok) return x;
        tol /= 16;  // unreachable by the error bound; defensive retry
    }
    throw InternalError("gordan: integerization failed");
}

}  // namespace detail

inline GordanResult gordan(const Matrix& a) {
    const Ctx& ctx = a.ctx();
    int m = a.rows(), n = a.cols();
    // Feasibility LP over y: A y = 0, sum y = 1, y >= 0.
    Matrix cons(ctx, m + 1, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) cons.at(i, j) = a.at(i, j);
    for (int j = 0; j < n; ++j) cons.at(m, j) = Scalar(ctx, 1);
    std::vector<Scalar> rhs(m + 1, Scalar(ctx, 0));
    rhs[m] = Scalar(ctx, 1);
    LPProblem p{cons, rhs, std::vector<Scalar>(n, Scalar(ctx, 0))};
    LPResult res = solve_lp(p);
    if (auto* opt = std::get_if<LPOptimal>(&res)) {
        return GordanResult{opt->x, std::nullopt};
    }
    auto* inf = std::get_if<LPInfeasible>(&res);
    if (!inf) throw InternalError("gordan: normalized feasibility LP cannot be unbounded");
    // Certificate w: w.[A;1] >= 0 with w_{m+1} < 0, so u = (w_1..w_m)
    // satisfies u.A >= -w_{m+1} > 0 in every coordinate.
    std::vector<Scalar> u(inf->y.begin(), inf->y.begin() + m);
    Scalar margin = -inf->y[m];
    if (margin.sign() <= 0) throw InternalError("gordan: invalid infeasibility certificate");
    std::vector<Int> x = detail::integerize_positive_combination(a, u, margin);
    return GordanResult{std::nullopt, std::move(x)};
}

/// Exactly one of the Farkas alternatives for (A, b): either y >= 0 with
/// A y^t = 0 and b y^t < 0, or x with x A <= b componentwise.
struct FarkasResult {
    std::optional<std::vector<Scalar>> y;  // alternative (i)
    std::optional<std::vector<Scalar>> x;  // alternative (ii)
};

inline FarkasResult farkas(const Matrix& a, const std::vector<Scalar>& b) {
    const Ctx& ctx = a.ctx();
    int n = a.cols();
    if (static_cast<int>(b.size()) != n) throw InputError("farkas: b length must equal columns of A");
    // max (-b).y subject to A y = 0, y >= 0. The feasible set is a cone, so
    // the outcome is either value 0 (duals give x A <= b) or unbounded (the
    // ray is alternative (i)).
    std::vector<Scalar> c(n, Scalar(ctx, 0));
    for (int j = 0; j < n; ++j) c[j] = -b[j];
    std::vector<Scalar> rhs(a.rows(), Scalar(ctx, 0));
    LPProblem p{a, rhs, std::move(c)};
    LPResult res = solve_lp(p);
    if (auto* unb = std::get_if<LPUnbounded>(&res)) {
        return FarkasResult{unb->ray, std::nullopt};
    }
    auto* opt = std::get_if<LPOptimal>(&res);
    if (!opt) throw InternalError("farkas: homogeneous LP cannot be infeasible");
    if (!opt->value.is_zero()) throw InternalError("farkas: conic LP optimum must be zero");
    std::vector<Scalar> x(a.rows(), Scalar(ctx, 0));
    for (int i = 0; i < a.rows(); ++i) x[i] = -opt->duals[i];
    return FarkasResult{std::nullopt, std::move(x)};
}

// Exact certificate checks (shared by tests and the CLI verifier).

inline bool verify_gordan(const Matrix& a, const GordanResult& r) {
    if (r.y.has_value() == r.x.has_value()) return false;  // exactly one alternative
    if (r.y) {
        const auto& y = *r.y;
        if (static_cast<int>(y.size()) != a.cols()) return false;
        bool nonzero = false;
        for (const Scalar& v : y) {
            if (v.sign() < 0) return false;
            if (!v.is_zero()) nonzero = true;
        }
        if (!nonzero) return false;
        for (const Scalar& v : a.apply(y))
            if (!v.is_zero()) return false;
        return true;
    }
    const auto& x = *r.x;
    if (static_cast<int>(x.size()) != a.rows()) return false;
    const Ctx& ctx = a.ctx();
    std::vector<Scalar> xs(x.size(), Scalar(ctx, 0));
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = Scalar(ctx, make_rat(x[i], Int(1)));
    for (const Scalar& v : a.apply_left(xs))
        if (v.sign() <= 0) return false;
    return true;
}

inline bool verify_farkas(const Matrix& a, const std::vector<Scalar>& b, const FarkasResult& r) {
    if (r.y.has_value() == r.x.has_value()) return false;
    const Ctx& ctx = a.ctx();
    if (r.y) {
        const auto& y = *r.y;
        if (static_cast<int>(y.size()) != a.cols()) return false;
        for (const Scalar& v : y)
            if (v.sign() < 0) return false;
        for (const Scalar& v : a.apply(y))
            if (!v.is_zero()) return false;
        Scalar by(ctx, 0);
        for (int j = 0; j < a.cols(); ++j) by = by + b[j] * y[j];
        return by.sign() < 0;
    }
    const auto& x = *r.x;
    if (static_cast<int>(x.size()) != a.rows()) return false;
    std::vector<Scalar> xa = a.apply_left(x);
    for (int j = 0; j < a.cols(); ++j)
        if ((xa[j] - b[j]).sign() > 0) return false;
    return true;
}

}  // namespace onesided

#endif  // ONESIDED_SIMPLEX_HPP
