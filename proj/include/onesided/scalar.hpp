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

#ifndef ONESIDED_SCALAR_HPP
#define ONESIDED_SCALAR_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "onesided/polynomial.hpp"
#include "onesided/rational.hpp"

namespace onesided {

struct NotIrreducible : InputError {
    explicit NotIrreducible(const std::string& w) : InputError(w) {}
};
struct NoRootInInterval : InputError {
    explicit NoRootInInterval(const std::string& w) : InputError(w) {}
};
struct MultipleRootsInInterval : InputError {
    explicit MultipleRootsInInterval(const std::string& w) : InputError(w) {}
};
struct ContextMismatch : InputError {
    explicit ContextMismatch(const std::string& w) : InputError(w) {}
};
struct DivisionByZero : InputError {
    explicit DivisionByZero(const std::string& w) : InputError(w) {}
};

class Scalar;

/// A real algebraic number field Q(theta): a monic irreducible polynomial
/// over Q together with a rational interval isolating one simple real root
/// theta. Degree 1 degenerates to plain rational arithmetic. Immutable.
class FieldContext {
  public:
    /// Validates irreducibility and root isolation. The polynomial is
    /// normalized to monic form; the interval is stored as given.
    static std::shared_ptr<const FieldContext> make(const QPoly& min_poly, const Rat& lo, const Rat& hi) {
        if (min_poly.degree() < 1) throw InputError("minimal polynomial must be nonconstant");
        QPoly p = min_poly.monic();
        if (!(lo < hi)) throw InputError("isolating interval must satisfy lo < hi");
        if (!is_irreducible_q(p)) throw NotIrreducible("polynomial is reducible over Q");
        if (p.degree() == 1) {
            Rat root = -p.coeff(0);
            if (!(lo < root && root < hi)) throw NoRootInInterval("interval does not contain the rational root");
            return std::shared_ptr<const FieldContext>(new FieldContext(p, lo, hi));
        }
        // Irreducible of degree >= 2 has no rational roots, so the endpoints
        // are not roots and Sturm's theorem counts roots in (lo, hi] exactly.
        int count = sturm_count_roots(p, lo, hi);
        if (count == 0) throw NoRootInInterval("no root of the polynomial in the interval");
        if (count > 1) throw MultipleRootsInInterval("interval contains more than one root");
        return std::shared_ptr<const FieldContext>(new FieldContext(p, lo, hi));
    }

    /// Rational field Q, represented as Q(theta) with theta = 0.
    static std::shared_ptr<const FieldContext> rational() {
        return make(QPoly({Rat(0), Rat(1)}), Rat(-1), Rat(1));
    }

    int degree() const { return min_poly_.degree(); }
    const QPoly& min_poly() const { return min_poly_; }
    Rat interval_lo() const { return lo_; }
    Rat interval_hi() const { return hi_; }

    /// theta^k reduced modulo the minimal polynomial, for k in [0, 2D-2].
    const std::vector<Rat>& theta_power(int k) const { return powers_[k]; }

    bool same_as(const FieldContext& other) const {
        if (this == &other) return true;
        return min_poly_ == other.min_poly_ && lo_ == other.lo_ && hi_ == other.hi_;
    }

    /// Bisects [lo, hi] once, keeping the half that contains theta.
    void refine(Rat& lo, Rat& hi) const {
        Rat mid = (lo + hi) / 2;
        Rat pm = min_poly_.eval(mid);
        if (pm == 0) {
            // Rational root: only possible in degree 1; collapse hard.
            Rat w = (hi - lo) / 4;
            lo = mid - w;
            hi = mid + w;
            return;
        }
        if (sgn(pm) == sgn(plo_)) lo = mid;
        else hi = mid;
    }

  private:
    FieldContext(QPoly p, Rat lo, Rat hi) : min_poly_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)) {
        plo_ = min_poly_.eval(lo_);
        if (plo_ == 0) plo_ = -min_poly_.eval(hi_);  // degree-1 guard; sign anchor for bisection
        int d = degree();
        powers_.assign(2 * d - 1 > 0 ? 2 * d - 1 : 1, std::vector<Rat>(d, Rat(0)));
        for (int k = 0; k < d; ++k) powers_[k][k] = 1;
        for (int k = d; k <= 2 * d - 2; ++k) {
            // theta^k = theta * theta^(k-1), then reduce the overflow term.
            std::vector<Rat> v(d, Rat(0));
            const std::vector<Rat>& prev = powers_[k - 1];
            Rat top = prev[d - 1];
            for (int i = d - 1; i >= 1; --i) v[i] = prev[i - 1];
            v[0] = 0;
            // theta^d = -(c_0 + c_1 theta + ... + c_{d-1} theta^{d-1})
            for (int i = 0; i < d; ++i) v[i] -= top * min_poly_.coeff(i);
            powers_[k] = std::move(v);
        }
    }

    QPoly min_poly_;
    Rat lo_, hi_;
    Rat plo_;
    std::vector<std::vector<Rat>> powers_;
};

using Ctx = std::shared_ptr<const FieldContext>;

/// Element of Q(theta): rational coefficients c_0..c_{D-1} of sum c_k theta^k.
/// Immutable value type; two elements are equal iff their coefficient vectors
/// are equal. Exact sign determination via symbolic zero test plus interval
/// refinement.
class Scalar {
  public:
    Scalar() = default;
    Scalar(Ctx ctx, const Rat& value) : ctx_(std::move(ctx)), c_(ctx_->degree(), Rat(0)) { c_[0] = value; }
    Scalar(Ctx ctx, long value) : Scalar(std::move(ctx), Rat(value)) {}
    Scalar(Ctx ctx, std::vector<Rat> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) > ctx_->degree())
            throw InputError("coefficient vector longer than field degree");
        c_.resize(ctx_->degree(), Rat(0));
    }

    const Ctx& ctx() const { return ctx_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const Rat& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// True iff the value lies in Q (theta-powers are Q-linearly independent).
    bool is_rational() const {
        for (std::size_t k = 1; k < c_.size(); ++k)
            if (c_[k] != 0) return false;
        return true;
    }

    Rat rational_value() const {
        if (!is_rational()) throw InternalError("scalar is not rational");
        return c_.empty() ? Rat(0) : c_[0];
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        a.check_ctx(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        a.check_ctx(b);
        std::vector<Rat> r = a.c_;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.c_[i];
        return Scalar(a.ctx_, std::move(r), nullptr);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        a.check_ctx(b);
        std::vector<Rat> r = a.c_;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.c_[i];
        return Scalar(a.ctx_, std::move(r), nullptr);
    }
    Scalar operator-() const {
        std::vector<Rat> r = c_;
        for (Rat& x : r) x = -x;
        return Scalar(ctx_, std::move(r), nullptr);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.check_ctx(b);
        int d = a.ctx_->degree();
        if (d == 1) {
            std::vector<Rat> r{a.c_[0] * b.c_[0]};
            return Scalar(a.ctx_, std::move(r), nullptr);
        }
        std::vector<Rat> prod(2 * d - 1, Rat(0));
        for (int i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        std::vector<Rat> r(d, Rat(0));
        for (int k = 0; k < 2 * d - 1; ++k) {
            if (prod[k] == 0) continue;
            const std::vector<Rat>& pw = a.ctx_->theta_power(k);
            for (int i = 0; i < d; ++i) r[i] += prod[k] * pw[i];
        }
        return Scalar(a.ctx_, std::move(r), nullptr);
    }
    friend Scalar operator*(const Scalar& a, const Rat& q) {
        std::vector<Rat> r = a.c_;
        for (Rat& x : r) x *= q;
        return Scalar(a.ctx_, std::move(r), nullptr);
    }
    friend Scalar operator*(const Rat& q, const Scalar& a) { return a * q; }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        int d = ctx_->degree();
        if (d == 1) {
            std::vector<Rat> r{Rat(1) / c_[0]};
            return Scalar(ctx_, std::move(r), nullptr);
        }
        // Extended Euclid in Q[t]: s*rep + t*minpoly = gcd = const != 0.
        QPoly a{std::vector<Rat>(c_)};
        QPoly b = ctx_->min_poly();
        QPoly s0 = QPoly::constant(Rat(1)), s1;
        QPoly r0 = a, r1 = b;
        while (!r1.is_zero()) {
            auto qr = r0.divmod(r1);
            QPoly s2 = s0 - qr.first * s1;
            r0 = r1;
            r1 = qr.second;
            s0 = s1;
            s1 = std::move(s2);
        }
        if (r0.degree() != 0) throw InternalError("inverse: gcd with irreducible minimal polynomial not constant");
        Rat g = r0.coeff(0);
        std::vector<Rat> inv(d, Rat(0));
        for (int i = 0; i <= s0.degree() && i < d; ++i) inv[i] = s0.coeff(i) / g;
        return Scalar(ctx_, std::move(inv), nullptr);
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    /// Exact sign in {-1, 0, +1}. Zero test is symbolic; a nonzero value is
    /// signed by refining the isolating interval until the interval-arithmetic
    /// enclosure of sum c_k theta^k excludes zero. Terminates because the
    /// value is a nonzero real number.
    int sign() const {
        if (is_zero()) return 0;
        if (ctx_->degree() == 1 || is_rational()) return sgn(c_[0]);
        Rat lo = ctx_->interval_lo(), hi = ctx_->interval_hi();
        for (int iter = 0; iter < 100000; ++iter) {
            auto [a, b] = enclosure(lo, hi);
            if (a > 0) return +1;
            if (b < 0) return -1;
            ctx_->refine(lo, hi);
        }
        throw InternalError("sign: refinement budget exceeded (should be unreachable)");
    }

    friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

    /// compare = sign(a - b).
    friend int compare(const Scalar& a, const Scalar& b) { return (a - b).sign(); }

    /// Rational q with |value - q| < tol. Deterministic: always starts from
    /// the context's canonical interval.
    Rat approx(const Rat& tol) const {
        if (ctx_->degree() == 1 || is_rational()) return c_.empty() ? Rat(0) : c_[0];
        Rat lo = ctx_->interval_lo(), hi = ctx_->interval_hi();
        while (true) {
            auto [a, b] = enclosure(lo, hi);
            if (b - a < tol) return (a + b) / 2;
            ctx_->refine(lo, hi);
        }
    }

    /// Exact enclosure [a, b] of the value from the current canonical
    /// isolating interval, refined `extra` additional times.
    std::pair<Rat, Rat> bounds(int extra = 0) const {
        Rat lo = ctx_->interval_lo(), hi = ctx_->interval_hi();
        for (int i = 0; i < extra; ++i) ctx_->refine(lo, hi);
        if (ctx_->degree() == 1 || is_rational()) {
            Rat v = c_.empty() ? Rat(0) : c_[0];
            return {v, v};
        }
        return enclosure(lo, hi);
    }

    /// Smallest integer >= value (exact).
    Int ceil() const {
        if (is_rational()) return rat_ceil(rational_value());
        Rat lo = ctx_->interval_lo(), hi = ctx_->interval_hi();
        while (true) {
            auto [a, b] = enclosure(lo, hi);
            Int ca = rat_ceil(a), cb = rat_ceil(b);
            if (ca == cb) return ca;
            ctx_->refine(lo, hi);
        }
    }

    Int floor() const { return -((-*this).ceil()); }

    /// Truncated decimal rendering (informational only).
    std::string decimal(int digits = 30) const {
        Rat tol(1);
        for (int i = 0; i < digits + 3; ++i) tol /= 10;
        return rat_to_decimal(approx(tol), digits);
    }

    void check_ctx(const Scalar& other) const {
        if (!ctx_ || !other.ctx_) throw ContextMismatch("scalar without context");
        if (!ctx_->same_as(*other.ctx_)) throw ContextMismatch("scalars from different fields");
    }

  private:
    // Internal fast-path constructor (coefficients already sized).
    Scalar(Ctx ctx, std::vector<Rat> coeffs, std::nullptr_t) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {}

    // Interval Horner evaluation of sum c_k theta^k over theta in [lo, hi].
    std::pair<Rat, Rat> enclosure(const Rat& lo, const Rat& hi) const {
        Rat a(0), b(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            // [a,b] * [lo,hi] + coeff
            Rat p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
            Rat mn = std::min(std::min(p1, p2), std::min(p3, p4));
            Rat mx = std::max(std::max(p1, p2), std::max(p3, p4));
            a = mn + *it;
            b = mx + *it;
        }
        return {a, b};
    }

    Ctx ctx_;
    std::vector<Rat> c_;
};

inline Scalar make_theta(const Ctx& ctx) {
    if (ctx->degree() == 1) return Scalar(ctx, -ctx->min_poly().coeff(0));
    std::vector<Rat> c(ctx->degree(), Rat(0));
    c[1] = 1;
    return Scalar(ctx, std::move(c));
}

}  // namespace onesided

#endif  // ONESIDED_SCALAR_HPP
