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

#ifndef ONESIDED_LINALG_HPP
#define ONESIDED_LINALG_HPP

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "onesided/scalar.hpp"

namespace onesided {

/// Dense matrix over Q(theta). All entries share one field context.
class Matrix {
  public:
    Matrix(Ctx ctx, int rows, int cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Scalar(ctx_, 0)) {}

    static Matrix from_rows(const Ctx& ctx, const std::vector<std::vector<Scalar>>& rows, int cols) {
        Matrix m(ctx, static_cast<int>(rows.size()), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(rows[i].size()) != cols) throw InputError("ragged matrix rows");
            for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
        }
        return m;
    }

    static Matrix identity(const Ctx& ctx, int n) {
        Matrix m(ctx, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(ctx, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Ctx& ctx() const { return ctx_; }

    Scalar& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(ctx_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<Scalar> row(int i) const {
        std::vector<Scalar> r(cols_, Scalar(ctx_, 0));
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw InputError("matrix-vector size mismatch");
        std::vector<Scalar> y(rows_, Scalar(ctx_, 0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) y[i] = y[i] + at(i, j) * x[j];
        return y;
    }

    std::vector<Scalar> apply_left(const std::vector<Scalar>& u) const {
        if (static_cast<int>(u.size()) != rows_) throw InputError("vector-matrix size mismatch");
        std::vector<Scalar> y(cols_, Scalar(ctx_, 0));
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i) y[j] = y[j] + u[i] * at(i, j);
        return y;
    }

  private:
    Ctx ctx_;
    int rows_, cols_;
    std::vector<Scalar> data_;
};

namespace detail {

/// In-place reduced row echelon form with deterministic first-nonzero pivot
/// scan. Returns pivot column per row-rank position. When `transform` is
/// supplied (same row count), the identical row operations are applied to it,
/// so transform accumulates T with rref = T * original.
inline std::vector<int> rref(Matrix& m, Matrix* transform = nullptr) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
            if (transform)
                for (int j = 0; j < transform->cols(); ++j) std::swap(transform->at(p, j), transform->at(r, j));
        }
        Scalar inv = m.at(r, c).inverse();
        for (int j = 0; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        if (transform)
            for (int j = 0; j < transform->cols(); ++j) transform->at(r, j) = transform->at(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
            if (transform)
                for (int j = 0; j < transform->cols(); ++j)
                    transform->at(i, j) = transform->at(i, j) - f * transform->at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline int rank(const Matrix& m) {
    Matrix tmp = m;
    return static_cast<int>(detail::rref(tmp).size());
}

/// Basis of the right null space over Q(theta). Each basis vector is
/// normalized so that its first nonzero entry equals 1. Empty iff the matrix
/// has full column rank.
inline std::vector<std::vector<Scalar>> kernel(const Matrix& m) {
    Matrix r = m;
    std::vector<int> pivots = detail::rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    const Ctx& ctx = m.ctx();
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(m.cols(), Scalar(ctx, 0));
        v[f] = Scalar(ctx, 1);
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -r.at(static_cast<int>(pr), f);
        // normalize: first nonzero entry = 1
        for (auto& x : v)
            if (!x.is_zero()) {
                Scalar inv = x.inverse();
                for (auto& y : v) y = y * inv;
                break;
            }
        basis.push_back(std::move(v));
    }
    return basis;
}

struct SolveInfeasible {
    /// Left certificate: u^T M = 0 and u^T b != 0, both exact.
    std::vector<Scalar> u;
};

using SolveResult = std::variant<std::vector<Scalar>, SolveInfeasible>;

/// One exact solution of M x = b (free variables set to 0), or an exact
/// infeasibility certificate.
inline SolveResult solve(const Matrix& m, const std::vector<Scalar>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw InputError("solve: rhs length mismatch");
    const Ctx& ctx = m.ctx();
    Matrix work = m;
    Matrix aug(ctx, m.rows(), m.rows() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        aug.at(i, i) = Scalar(ctx, 1);
        aug.at(i, m.rows()) = b[i];
    }
    std::vector<int> pivots = detail::rref(work, &aug);
    int r = static_cast<int>(pivots.size());
    // Any row beyond the rank with nonzero reduced rhs is inconsistent; the
    // matching transform row is the certificate.
    for (int i = r; i < m.rows(); ++i) {
        if (!aug.at(i, m.rows()).is_zero()) {
            std::vector<Scalar> u(m.rows(), Scalar(ctx, 0));
            for (int j = 0; j < m.rows(); ++j) u[j] = aug.at(i, j);
            return SolveInfeasible{std::move(u)};
        }
    }
    std::vector<Scalar> x(m.cols(), Scalar(ctx, 0));
    for (int i = 0; i < r; ++i) x[pivots[i]] = aug.at(i, m.rows());
    return x;
}

/// Splits a vector over Q(theta) into its D rational coefficient slices;
/// slice k collects the theta^k coefficient of every entry.
inline std::vector<std::vector<Rat>> rational_components(const std::vector<Scalar>& v) {
    if (v.empty()) return {};
    int d = v.front().ctx()->degree();
    std::vector<std::vector<Rat>> slices(d, std::vector<Rat>(v.size(), Rat(0)));
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j].check_ctx(v.front());
        for (int k = 0; k < d; ++k) slices[k][j] = v[j].coeffs()[k];
    }
    return slices;
}

// ---------------------------------------------------------------------------
// Rational (D = 1) linear algebra on plain Rat grids, used for the
// theta-slice computations.
// ---------------------------------------------------------------------------

using RatMatrix = std::vector<std::vector<Rat>>;  // row-major, rectangular

namespace detail {

inline std::vector<int> rref_q(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m.front().size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[r]);
        Rat inv = Rat(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline int rank_q(RatMatrix m) { return static_cast<int>(detail::rref_q(m).size()); }

inline std::vector<std::vector<Rat>> kernel_q(RatMatrix m) {
    if (m.empty()) return {};
    int cols = static_cast<int>(m.front().size());
    std::vector<int> pivots = detail::rref_q(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -m[pr][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Scales a rational vector to a primitive integer vector (content 1, first
/// nonzero entry positive).
inline std::vector<Int> to_primitive_integer(const std::vector<Rat>& v) {
    Int den(1);
    for (const Rat& x : v) den = int_lcm(den, Int(x.get_den()));
    std::vector<Int> w(v.size());
    Int content(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = Int(v[i].get_num()) * (den / Int(v[i].get_den()));
        content = int_gcd(content, w[i]);
    }
    if (content == 0) return w;
    for (Int& x : w) x /= content;
    for (const Int& x : w) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : w) y = -y;
        break;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form.
// ---------------------------------------------------------------------------

class IntMatrix {
  public:
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Int(0)) {}

    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
        IntMatrix m(static_cast<int>(rows.size()), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(rows[i].size()) != cols) throw InputError("ragged integer matrix rows");
            for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw InputError("integer matrix product shape mismatch");
        IntMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (int j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    int rows_, cols_;
    std::vector<Int> data_;
};

struct SmithResult {
    IntMatrix u, s, v;      // u * m * v == s, u and v unimodular
    IntMatrix v_inv;        // inverse of v, tracked alongside
    std::vector<Int> divisors;  // nonzero diagonal entries d1 | d2 | ...
};

/// Smith normal form by gcd-reduction. Deterministic; entry growth is
/// accepted at desk scale.
inline SmithResult smith_normal_form(const IntMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    IntMatrix vinv = IntMatrix::identity(cols);

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(s.at(a, j), s.at(b, j));
        for (int j = 0; j < rows; ++j) std::swap(u.at(a, j), u.at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(s.at(i, a), s.at(i, b));
        for (int i = 0; i < cols; ++i) std::swap(v.at(i, a), v.at(i, b));
        for (int j = 0; j < cols; ++j) std::swap(vinv.at(a, j), vinv.at(b, j));
    };
    auto add_row = [&](int dst, int src, const Int& f) {  // row dst += f * row src
        for (int j = 0; j < cols; ++j) s.at(dst, j) += f * s.at(src, j);
        for (int j = 0; j < rows; ++j) u.at(dst, j) += f * u.at(src, j);
    };
    auto add_col = [&](int dst, int src, const Int& f) {  // col dst += f * col src
        for (int i = 0; i < rows; ++i) s.at(i, dst) += f * s.at(i, src);
        for (int i = 0; i < cols; ++i) v.at(i, dst) += f * v.at(i, src);
        // inverse op on vinv: row src -= f * row dst
        for (int j = 0; j < cols; ++j) vinv.at(src, j) -= f * vinv.at(dst, j);
    };
    auto negate_row = [&](int a) {
        for (int j = 0; j < cols; ++j) s.at(a, j) = -s.at(a, j);
        for (int j = 0; j < rows; ++j) u.at(a, j) = -u.at(a, j);
    };

    int t = 0;
    int dim = std::min(rows, cols);
    while (t < dim) {
        // find nonzero entry with minimal absolute value in the trailing block
        int pi = -1, pj = -1;
        Int best(0);
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (s.at(i, j) == 0) continue;
                Int a = abs(s.at(i, j));
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing block zero
        swap_rows(t, pi);
        swap_cols(t, pj);
        if (s.at(t, t) < 0) negate_row(t);
        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
            if (s.at(i, t) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s.at(i, t).get_mpz_t(), s.at(t, t).get_mpz_t());
            add_row(i, t, -q);
            if (s.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < cols; ++j) {
            if (s.at(t, j) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s.at(t, j).get_mpz_t(), s.at(t, t).get_mpz_t());
            add_col(j, t, -q);
            if (s.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; repeat at t
        // pivot must divide the whole trailing block
        bool divides_all = true;
        for (int i = t + 1; i < rows && divides_all; ++i)
            for (int j = t + 1; j < cols; ++j)
                if (s.at(i, j) % s.at(t, t) != 0) {
                    add_row(t, i, Int(1));
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;
        ++t;
    }
    SmithResult res{std::move(u), std::move(s), std::move(v), std::move(vinv), {}};
    for (int k = 0; k < dim; ++k)
        if (res.s.at(k, k) != 0) res.divisors.push_back(res.s.at(k, k));
    return res;
}

/// Basis of the saturated integer kernel lattice {z : M z = 0} (as columns of
/// V matching zero diagonal positions of the Smith form).
inline std::vector<std::vector<Int>> int_kernel_basis(const IntMatrix& m) {
    SmithResult snf = smith_normal_form(m);
    int r = static_cast<int>(snf.divisors.size());
    std::vector<std::vector<Int>> basis;
    for (int j = r; j < m.cols(); ++j) {
        std::vector<Int> col(m.cols());
        for (int i = 0; i < m.cols(); ++i) col[i] = snf.v.at(i, j);
        basis.push_back(std::move(col));
    }
    return basis;
}

/// One integer solution of M z = b over Z, if any.
inline std::optional<std::vector<Int>> int_solve(const IntMatrix& m, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw InputError("int_solve: rhs length mismatch");
    SmithResult snf = smith_normal_form(m);
    // U M V = S, so M z = b with z = V y reduces to S y = U b.
    std::vector<Int> ub(m.rows(), Int(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) ub[i] += snf.u.at(i, j) * b[j];
    std::vector<Int> y(m.cols(), Int(0));
    int dim = std::min(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        Int d = (i < dim) ? snf.s.at(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    std::vector<Int> z(m.cols(), Int(0));
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j) z[i] += snf.v.at(i, j) * y[j];
    return z;
}

}  // namespace onesided

#endif  // ONESIDED_LINALG_HPP
