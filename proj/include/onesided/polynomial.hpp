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

#ifndef ONESIDED_POLYNOMIAL_HPP
#define ONESIDED_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "onesided/rational.hpp"

namespace onesided {

/// Dense univariate polynomial over Q, coefficients in ascending power order.
/// The zero polynomial is the empty vector; nonzero polynomials carry a
/// nonzero leading coefficient.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly constant(const Rat& a) { return QPoly(std::vector<Rat>{a}); }
    static QPoly x() { return QPoly({Rat(0), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const { return c_.back(); }
    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    QPoly derivative() const {
        if (c_.size() <= 1) return QPoly();
        std::vector<Rat> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rat(static_cast<long>(k));
        return QPoly(std::move(d));
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        std::vector<Rat> d = c_;
        Rat lc = c_.back();
        for (Rat& x : d) x /= lc;
        return QPoly(std::move(d));
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return QPoly(std::move(r));
    }

    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return QPoly(std::move(r));
    }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(r));
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw InternalError("polynomial division by zero");
        std::vector<Rat> rem = c_;
        std::vector<Rat> quo;
        int dd = d.degree();
        while (static_cast<int>(rem.size()) - 1 >= dd && !rem.empty()) {
            Rat factor = rem.back() / d.leading();
            int shift = static_cast<int>(rem.size()) - 1 - dd;
            if (static_cast<int>(quo.size()) < shift + 1) quo.resize(shift + 1, Rat(0));
            quo[shift] = factor;
            for (int i = 0; i <= dd; ++i) rem[shift + i] -= factor * d.c_[i];
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        return {QPoly(std::move(quo)), QPoly(std::move(rem))};
    }

    bool divides(const QPoly& other) const { return other.divmod(*this).second.is_zero(); }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Primitive integer polynomial equal to the input up to a positive rational
/// factor (content cleared, positive leading coefficient).
inline std::vector<Int> primitive_integer_poly(const QPoly& p) {
    if (p.is_zero()) return {};
    Int den(1);
    for (const Rat& c : p.coeffs()) den = int_lcm(den, Int(c.get_den()));
    std::vector<Int> v;
    v.reserve(p.coeffs().size());
    Int content(0);
    for (const Rat& c : p.coeffs()) {
        Int n = Int(c.get_num()) * (den / Int(c.get_den()));
        v.push_back(n);
        content = int_gcd(content, n);
    }
    for (Int& n : v) n /= content;
    if (v.back() < 0)
        for (Int& n : v) n = -n;
    return v;
}

namespace detail {

inline Int int_poly_eval(const std::vector<Int>& p, const Int& x) {
    Int acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// ---- Arithmetic in F_p[x] for small primes (irreducibility probe). ----

using FpPoly = std::vector<std::uint64_t>;  // ascending, coefficients mod p

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce modulo `mod` (monic)
    while (r.size() >= mod.size() && !r.empty()) {
        std::uint64_t f = r.back();
        std::size_t shift = r.size() - mod.size();
        for (std::size_t i = 0; i < mod.size(); ++i) r[shift + i] = (r[shift + i] + p * f - f * mod[i] % p) % p;
        fp_trim(r);
    }
    return r;
}

inline FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& mod, std::uint64_t p) {
    FpPoly result{1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = fp_mulmod(result, base, mod, p);
        base = fp_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    auto modexp = [p](std::uint64_t x, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b
        std::uint64_t inv = modexp(b.back(), p - 2);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = a.back() * inv % p;
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p * f - f * b[i] % p) % p;
            fp_trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

/// Rabin's test: f (monic, degree d >= 1) is irreducible over F_p iff
/// x^(p^d) == x (mod f) and gcd(x^(p^(d/q)) - x, f) = 1 for all primes q | d.
inline bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
    std::size_t d = f.size() - 1;
    FpPoly x{0, 1};
    Int pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
    FpPoly xpd = fp_powmod(x, pd, f, p);
    FpPoly diff = xpd;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp_trim(diff);
    if (!diff.empty()) return false;
    std::vector<std::size_t> prime_divs;
    std::size_t m = d;
    for (std::size_t q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            prime_divs.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) prime_divs.push_back(m);
    for (std::size_t q : prime_divs) {
        Int e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, d / q);
        FpPoly xe = fp_powmod(x, e, f, p);
        FpPoly g = xe;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        fp_trim(g);
        FpPoly gg = fp_gcd(f, g, p);
        if (gg.size() != 1) return false;
    }
    return true;
}

inline std::vector<Int> divisors_of(Int v) {
    if (v < 0) v = -v;
    std::vector<Int> divs;
    Int d(1);
    while (d * d <= v) {
        if (v % d == 0) {
            divs.push_back(d);
            if (d * d != v) divs.push_back(v / d);
        }
        ++d;
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Kronecker's factor search: definitive test for a factor of degree exactly
/// `want` of the primitive integer polynomial `f`. Interpolates candidate
/// factors through divisor tuples of f at small integer points. Requires
/// f(x) != 0 at integer points (no rational roots), which the caller ensures.
inline bool kronecker_has_factor_of_degree(const QPoly& f, int want) {
    std::vector<Int> points;
    std::vector<Int> values;
    for (long x = 0; static_cast<int>(points.size()) < want + 1; x = (x > 0 ? -x : -x + 1)) {
        Int v = int_poly_eval(primitive_integer_poly(f), Int(x));
        if (v == 0) throw InternalError("kronecker: unexpected integer root");
        points.emplace_back(x);
        values.push_back(v);
    }
    std::vector<std::vector<Int>> divs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) divs[i] = divisors_of(values[i]);
    // Candidate value tuples: fix the value at points[0] positive (factors
    // come in +/- pairs).
    std::vector<std::size_t> idx(values.size(), 0);
    std::vector<int> sign(values.size(), +1);
    auto interpolate = [&](const std::vector<Rat>& ys) {
        // Lagrange interpolation through (points[i], ys[i]).
        QPoly acc;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            QPoly term = QPoly::constant(ys[i]);
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (i == j) continue;
                Rat denom = make_rat(points[i] - points[j], Int(1));
                QPoly lin({make_rat(-points[j], Int(1)) / denom, Rat(1) / denom});
                term = term * lin;
            }
            acc = acc + term;
        }
        return acc;
    };
    std::size_t npts = values.size();
    // Iterate over all (divisor, sign) tuples, first point positive only.
    std::vector<std::size_t> counter(npts, 0);
    std::size_t total_signs = std::size_t(1) << (npts - 1);
    while (true) {
        for (std::size_t smask = 0; smask < total_signs; ++smask) {
            std::vector<Rat> ys(npts);
            for (std::size_t i = 0; i < npts; ++i) {
                Int val = divs[i][counter[i]];
                if (i > 0 && (smask >> (i - 1)) & 1) val = -val;
                ys[i] = make_rat(val, Int(1));
            }
            QPoly cand = interpolate(ys);
            if (cand.degree() == want && cand.divides(f)) return true;
        }
        std::size_t k = 0;
        while (k < npts && ++counter[k] == divs[k].size()) counter[k++] = 0;
        if (k == npts) break;
    }
    return false;
}

}  // namespace detail

inline bool has_rational_root(const QPoly& p) {
    std::vector<Int> ip = primitive_integer_poly(p);
    if (ip.empty()) return true;
    if (ip.front() == 0) return true;  // root at 0
    std::vector<Int> ps = detail::divisors_of(ip.front());
    std::vector<Int> qs = detail::divisors_of(ip.back());
    for (const Int& a : ps)
        for (const Int& b : qs) {
            Rat r = make_rat(a, b);
            if (p.eval(r) == 0 || p.eval(-r) == 0) return true;
        }
    return false;
}

/// Sound and complete irreducibility test over Q for nonconstant polynomials.
/// Fast path: an irreducible image mod p (p not dividing the leading
/// coefficient) certifies irreducibility. Fallback: Kronecker factor search,
/// which is definitive in both directions.
inline bool is_irreducible_q(const QPoly& p) {
    int d = p.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    std::vector<Int> ip = primitive_integer_poly(p);
    QPoly prim;
    {
        std::vector<Rat> c(ip.size());
        for (std::size_t i = 0; i < ip.size(); ++i) c[i] = make_rat(ip[i], Int(1));
        prim = QPoly(std::move(c));
    }
    if (poly_gcd(prim, prim.derivative()).degree() > 0) return false;  // repeated factor
    if (has_rational_root(prim)) return false;
    if (d <= 3) return true;  // no linear factor and deg <= 3
    static const std::uint64_t probe_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (std::uint64_t q : probe_primes) {
        if (ip.back() % Int(static_cast<long>(q)) == 0) continue;
        detail::FpPoly f(ip.size());
        for (std::size_t i = 0; i < ip.size(); ++i) {
            Int m = ip[i] % Int(static_cast<long>(q));
            if (m < 0) m += Int(static_cast<long>(q));
            f[i] = m.get_ui();
        }
        // make monic mod q
        std::uint64_t lc = f.back(), inv = 1;
        {
            std::uint64_t e = q - 2, x = lc;
            while (e) {
                if (e & 1) inv = inv * x % q;
                x = x * x % q;
                e >>= 1;
            }
        }
        for (auto& coef : f) coef = coef * inv % q;
        detail::FpPoly der;
        for (std::size_t k = 1; k < f.size(); ++k) der.push_back(f[k] * (k % q) % q);
        detail::fp_trim(der);
        if (der.empty() || detail::fp_gcd(f, der, q).size() != 1) continue;  // not squarefree mod q
        if (detail::fp_irreducible(f, q)) return true;
    }
    for (int want = 2; want <= d / 2; ++want)
        if (detail::kronecker_has_factor_of_degree(prim, want)) return false;
    return true;
}

/// Number of sign agreements dropped along the Sturm chain: the count of
/// distinct real roots of `p` in the half-open interval (a, b].
inline int sturm_count_roots(const QPoly& p, const Rat& a, const Rat& b) {
    std::vector<QPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero()) {
        QPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
        std::vector<Rat> neg = r.coeffs();
        for (Rat& x : neg) x = -x;
        chain.emplace_back(neg);
    }
    chain.pop_back();
    auto variations = [&chain](const Rat& x) {
        int v = 0, prev = 0;
        for (const QPoly& q : chain) {
            Rat val = q.eval(x);
            int s = sgn(val);
            if (s != 0) {
                if (prev != 0 && s != prev) ++v;
                prev = s;
            }
        }
        return v;
    };
    return variations(a) - variations(b);
}

}  // namespace onesided

#endif  // ONESIDED_POLYNOMIAL_HPP
