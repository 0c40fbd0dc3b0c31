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

#ifndef ONESIDED_RATIONAL_HPP
#define ONESIDED_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace onesided {

/// Arbitrary-precision integer and rational. GMP keeps mpq_class values in
/// lowest terms with positive denominator once canonicalized; every
/// constructor helper below canonicalizes.
using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or rejected user input (maps to CLI exit code 2).
struct InputError : Error {
    explicit InputError(const std::string& what) : Error(what) {}
};

/// A broken internal invariant; reaching this is a bug, not a user error.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

/// Parses "p", "-p" or "p/q" in base 10.
inline Rat parse_rat(const std::string& text) {
    Rat q;
    if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw InputError("invalid rational literal: '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw InputError("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// g = gcd(a, b) together with s, t such that s*a + t*b = g.
inline void int_gcdext(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

/// Generator of the additive group sum_i Z*q_i together with integer Bezout
/// coefficients: sum_i coeff[i]*q[i] = gen, gen >= 0, and gen == 0 iff all
/// q_i == 0. For nonzero input, every q_i is an integer multiple of gen.
struct RatGcdResult {
    Rat gen;
    std::vector<Int> coeff;
};

inline RatGcdResult rat_gcd_bezout(const std::vector<Rat>& q) {
    RatGcdResult res;
    res.coeff.assign(q.size(), Int(0));
    if (q.empty()) {
        res.gen = 0;
        return res;
    }
    Int den(1);
    for (const Rat& x : q) den = int_lcm(den, Int(x.get_den()));
    // Scaled integers n_i = q_i * den; fold extended gcds left to right.
    Int g(0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        Int ni = Int(q[i].get_num()) * (den / Int(q[i].get_den()));
        Int g2, s, t;
        int_gcdext(g, ni, g2, s, t);
        for (std::size_t j = 0; j < i; ++j) res.coeff[j] *= s;
        res.coeff[i] = t;
        g = g2;
    }
    res.gen = make_rat(g, den);
    return res;
}

/// Truncated fixed-point decimal rendering with `digits` fractional digits
/// (informational; exact values travel as coefficient vectors).
inline std::string rat_to_decimal(const Rat& q, int digits) {
    Int num = Int(q.get_num());
    const Int& den = Int(q.get_den());
    bool neg = num < 0;
    if (neg) num = -num;
    Int ip = num / den;
    Int rem = num % den;
    std::string out = (neg && (ip != 0 || rem != 0)) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        out += '.';
        for (int k = 0; k < digits; ++k) {
            rem *= 10;
            Int d = rem / den;
            rem %= den;
            out += d.get_str();
        }
    }
    return out;
}

}  // namespace onesided

#endif  // ONESIDED_RATIONAL_HPP
