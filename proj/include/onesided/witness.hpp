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

#ifndef ONESIDED_WITNESS_HPP
#define ONESIDED_WITNESS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "onesided/decide.hpp"

namespace onesided {

/// Test hook for the exactness audit: when poisoned, every floating
/// candidate score collapses to a constant, so search ordering degrades to
/// the canonical lexicographic order. Verdicts must not change, because
/// acceptance of a candidate is always decided in exact arithmetic.
inline bool& float_heuristics_poisoned() {
    static bool poisoned = false;
    return poisoned;
}

/// Verified one-sided approximation witness: h' = sum coeffs_j h_j with
/// every coordinate of h - m h' at least -eps (scaled by the unit).
struct Witness {
    std::vector<Int> coeffs;
    Int m;
    Rat eps;
    std::vector<Int> h_combo;
    std::vector<Scalar> slack;  // coordinates of h - m h', each >= -eps u_i
};

struct WitnessRejected {
    int coordinate;    // first violated coordinate
    Scalar slack_value;
};

struct BudgetExhausted {
    long max_radius;
};

/// Property (B) fails: carries the failure certificate as proof that no
/// witness below eps0 exists at all.
struct NoWitnessExists : Error {
    explicit NoWitnessExists(FailureCertificate c)
        : Error("no witness exists; the failure certificate bounds every candidate"), certificate(std::move(c)) {}
    FailureCertificate certificate;
};

inline std::vector<Scalar> witness_slack(const SubgroupSpec& h, const std::vector<Int>& h_combo, const Int& m,
                                         const std::vector<Int>& coeffs) {
    std::vector<Scalar> target = h.element(h_combo);
    std::vector<Scalar> hp = h.element(coeffs);
    Rat mq = make_rat(m, Int(1));
    for (int i = 0; i < h.n; ++i) target[i] = target[i] - hp[i] * mq;
    return target;
}

inline std::variant<Witness, WitnessRejected> verify_witness(const SubgroupSpec& h, const std::vector<Int>& h_combo,
                                                             const Int& m, const Rat& eps,
                                                             const std::vector<Int>& coeffs,
                                                             const std::vector<Scalar>& unit) {
    if (m < 2) throw InputError("modulus must be at least 2");
    if (!(eps > 0)) throw InputError("epsilon must be positive");
    check_unit(unit);
    std::vector<Scalar> slack = witness_slack(h, h_combo, m, coeffs);
    for (int i = 0; i < h.n; ++i)
        if ((slack[i] + unit[i] * eps).sign() < 0) return WitnessRejected{i, slack[i]};
    return Witness{coeffs, m, eps, h_combo, std::move(slack)};
}

inline std::variant<Witness, WitnessRejected> verify_witness(const SubgroupSpec& h, const std::vector<Int>& h_combo,
                                                             const Int& m, const Rat& eps,
                                                             const std::vector<Int>& coeffs) {
    return verify_witness(h, h_combo, m, eps, coeffs, ones_unit(h.ctx, h.n));
}

namespace detail {

struct SearchData {
    const SubgroupSpec* h;
    std::vector<Scalar> target;       // coordinates of h
    std::vector<Scalar> eps_u;        // eps * u_i
    Rat m;
    std::vector<std::vector<double>> gens_f;  // float approximations (ordering only)
    std::vector<double> target_f;
};

inline bool slack_ok(const SearchData& d, const std::vector<Scalar>& slack) {
    for (std::size_t i = 0; i < slack.size(); ++i)
        if ((slack[i] + d.eps_u[i]).sign() < 0) return false;
    return true;
}

inline double float_score(const SearchData& d, const std::vector<long>& a) {
    if (float_heuristics_poisoned()) return 0.0;
    double mn = 1e300;
    double md = d.m.get_d();
    for (std::size_t i = 0; i < d.target_f.size(); ++i) {
        double v = d.target_f[i];
        for (std::size_t j = 0; j < a.size(); ++j) v -= md * a[j] * d.gens_f[j][i];
        mn = std::min(mn, v);
    }
    return mn;
}

/// Exact check of one candidate.
inline std::optional<Witness> try_candidate(const SubgroupSpec& h, const std::vector<Int>& h_combo, const Int& m,
                                            const Rat& eps, const std::vector<Scalar>& unit,
                                            const std::vector<long>& a) {
    std::vector<Int> coeffs(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) coeffs[j] = Int(a[j]);
    auto res = verify_witness(h, h_combo, m, eps, coeffs, unit);
    if (auto* w = std::get_if<Witness>(&res)) return *w;
    return std::nullopt;
}

/// Walks the box ||a||_inf <= radius in lexicographic order, maintaining the
/// slack vector incrementally; candidates inside the previously scanned box
/// are skipped. Exact sign checks accept the first witness.
inline std::optional<Witness> scan_shell_lex(const SubgroupSpec& h, const std::vector<Int>& h_combo, const Int& m,
                                             const Rat& eps, long radius, long prev_radius, const SearchData& d) {
    const Ctx& ctx = h.ctx;
    int s = h.count();
    std::vector<long> a(s, -radius);
    // slack at the starting corner
    std::vector<Int> coeffs(s);
    for (int j = 0; j < s; ++j) coeffs[j] = Int(a[j]);
    std::vector<Scalar> slack = witness_slack(h, h_combo, m, coeffs);
    // per-generator slack deltas for +1 steps: -m * h_j
    std::vector<std::vector<Scalar>> step(s, std::vector<Scalar>(h.n, Scalar(ctx, 0)));
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < h.n; ++i) step[j][i] = h.gens[j][i] * (-make_rat(m, Int(1)));
    while (true) {
        bool inside_prev = true;
        for (int j = 0; j < s; ++j) inside_prev = inside_prev && (a[j] <= prev_radius && a[j] >= -prev_radius);
        if (!inside_prev && slack_ok(d, slack)) {
            std::vector<Int> cs(s);
            for (int j = 0; j < s; ++j) cs[j] = Int(a[j]);
            Witness w{cs, m, eps, h_combo, slack};
            return w;
        }
        // odometer step (last coordinate fastest)
        int k = s - 1;
        while (k >= 0 && a[k] == radius) --k;
        if (k < 0) return std::nullopt;
        a[k] += 1;
        for (int i = 0; i < h.n; ++i) slack[i] = slack[i] + step[k][i];
        for (int j = k + 1; j < s; ++j) {
            long jump = a[j] - (-radius);  // reset from radius.. to -radius
            a[j] = -radius;
            if (jump != 0)
                for (int i = 0; i < h.n; ++i) slack[i] = slack[i] - step[j][i] * Rat(jump);
        }
    }
}

inline std::optional<Witness> scan_shell_scored(const SubgroupSpec& h, const std::vector<Int>& h_combo, const Int& m,
                                                const Rat& eps, const std::vector<Scalar>& unit, long radius,
                                                long prev_radius, const SearchData& d) {
    int s = h.count();
    std::vector<std::vector<long>> shell;
    std::vector<long> a(s, -radius);
    while (true) {
        bool inside_prev = true;
        for (int j = 0; j < s; ++j) inside_prev = inside_prev && (a[j] <= prev_radius && a[j] >= -prev_radius);
        if (!inside_prev) shell.push_back(a);
        int k = s - 1;
        while (k >= 0 && a[k] == radius) --k;
        if (k < 0) break;
        a[k] += 1;
        for (int j = k + 1; j < s; ++j) a[j] = -radius;
    }
    std::stable_sort(shell.begin(), shell.end(), [&](const std::vector<long>& x, const std::vector<long>& y) {
        return float_score(d, x) > float_score(d, y);
    });
    for (const auto& cand : shell)
        if (auto w = try_candidate(h, h_combo, m, eps, unit, cand)) return w;
    return std::nullopt;
}

}  // namespace detail

/// Searches for a one-sided witness. Tier 1 exploits structure: the strictly
/// positive combination when Z(H) is empty, and integer roundings of the
/// exact real solution h/m otherwise. Tier 2 enumerates coefficient boxes of
/// growing radius 1, 2, 4, ... up to `budget`; the first verified witness in
/// canonical order wins. Floating scores only reorder candidates.
inline std::variant<Witness, BudgetExhausted> construct_witness(const SubgroupSpec& h,
                                                                const std::vector<Int>& h_combo, const Int& m,
                                                                const Rat& eps, long budget,
                                                                const std::vector<Scalar>& unit) {
    if (m < 2) throw InputError("modulus must be at least 2");
    if (!(eps > 0)) throw InputError("epsilon must be positive");
    check_unit(unit);
    int s = h.count();
    DecisionOutcome outcome = decide(h, unit);
    if (outcome.verdict == Verdict::FailsB) throw NoWitnessExists(*outcome.certificate);

    if (s == 0) {
        // H = {0}: the only h is 0 and h' = 0 is a zero-slack witness.
        auto res = verify_witness(h, h_combo, m, eps, {}, unit);
        return std::get<Witness>(res);
    }

    // Tier 1a: Z(H) empty; h' = -l v for the positive combination v.
    if (outcome.positivity) {
        const auto& pc = *outcome.positivity;
        std::vector<Scalar> hv = h.element(h_combo);
        Int l(0);
        for (int i = 0; i < h.n; ++i) {
            Scalar need = -hv[i] / (pc.element[i] * make_rat(m, Int(1)));
            Int li = need.ceil();
            if (li > l) l = li;
        }
        std::vector<Int> coeffs(s, Int(0));
        for (int j = 0; j < s; ++j) coeffs[j] = -l * pc.combo[j];
        auto res = verify_witness(h, h_combo, m, eps, coeffs, unit);
        auto* w = std::get_if<Witness>(&res);
        if (!w) throw InternalError("positive-combination witness failed its exact check");
        return *w;
    }

    detail::SearchData d;
    d.h = &h;
    d.target = h.element(h_combo);
    d.m = make_rat(m, Int(1));
    d.eps_u.reserve(h.n);
    for (int i = 0; i < h.n; ++i) d.eps_u.push_back(unit[i] * eps);
    d.gens_f.assign(s, std::vector<double>(h.n, 0.0));
    d.target_f.assign(h.n, 0.0);
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < h.n; ++i) {
            auto [lo, hi] = h.gens[j][i].bounds(40);
            d.gens_f[j][i] = (lo.get_d() + hi.get_d()) / 2;
        }
    for (int i = 0; i < h.n; ++i) {
        auto [lo, hi] = d.target[i].bounds(40);
        d.target_f[i] = (lo.get_d() + hi.get_d()) / 2;
    }

    // Tier 1b: roundings of the exact real solution y0 = h_combo / m of the
    // unprojected system, with a small correction box (the ceiling rounding
    // comes first in canonical order).
    bool roundable = true;
    for (int j = 0; j < s; ++j)
        if (!mpz_fits_slong_p(rat_ceil(make_rat(h_combo[j], m)).get_mpz_t())) roundable = false;
    if (s > 0 && roundable) {
        std::vector<Rat> y0(s);
        for (int j = 0; j < s; ++j) y0[j] = make_rat(h_combo[j], m);
        std::vector<std::vector<long>> bases;
        std::vector<long> ce(s), fl(s);
        for (int j = 0; j < s; ++j) {
            ce[j] = static_cast<long>(rat_ceil(y0[j]).get_si());
            fl[j] = static_cast<long>(rat_floor(y0[j]).get_si());
        }
        bases.push_back(ce);
        if (fl != ce) bases.push_back(fl);
        std::vector<std::vector<long>> candidates;
        std::vector<long> off(s, -1);
        while (true) {
            for (const auto& b : bases) {
                std::vector<long> cand(s);
                for (int j = 0; j < s; ++j) cand[j] = b[j] + off[j];
                candidates.push_back(std::move(cand));
            }
            int k = s - 1;
            while (k >= 0 && off[k] == 1) --k;
            if (k < 0) break;
            off[k] += 1;
            for (int j = k + 1; j < s; ++j) off[j] = -1;
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](const std::vector<long>& x, const std::vector<long>& y) {
                             return detail::float_score(d, x) > detail::float_score(d, y);
                         });
        for (const auto& cand : candidates)
            if (auto w = detail::try_candidate(h, h_combo, m, eps, unit, cand)) return *w;
    }

    // Tier 2: exhaustive boxes of radius 1, 2, 4, ..., budget.
    long prev = -1;
    for (long radius = 1; radius <= budget; radius = std::min(radius * 2, budget)) {
        if (simplex_trace()) *simplex_trace() << "witness search: box radius " << radius << "\n";
        std::optional<Witness> w;
        double shell_size = std::pow(2.0 * radius + 1, s);
        if (!float_heuristics_poisoned() && shell_size <= 200000.0)
            w = detail::scan_shell_scored(h, h_combo, m, eps, unit, radius, prev, d);
        else
            w = detail::scan_shell_lex(h, h_combo, m, eps, radius, prev, d);
        if (w) return *w;
        prev = radius;
        if (radius == budget) break;
    }
    return BudgetExhausted{budget};
}

inline std::variant<Witness, BudgetExhausted> construct_witness(const SubgroupSpec& h,
                                                                const std::vector<Int>& h_combo, const Int& m,
                                                                const Rat& eps, long budget) {
    return construct_witness(h, h_combo, m, eps, budget, ones_unit(h.ctx, h.n));
}

/// Modulus transport: turns an (m, eps/2)-witness machinery into an
/// (n, eps)-witness via h'' = q h' with q = ceil(m^j / n) for a sufficiently
/// large power j.
inline std::variant<Witness, BudgetExhausted> transport_witness(const SubgroupSpec& h,
                                                                const std::vector<Int>& h_combo, const Int& m,
                                                                const Int& n_to, const Rat& eps, long budget,
                                                                const std::vector<Scalar>& unit) {
    if (m < 2 || n_to < 2) throw InputError("moduli must be at least 2");
    if (!(eps > 0)) throw InputError("epsilon must be positive");
    check_unit(unit);
    // Exact bound h <= l u coordinatewise.
    std::vector<Scalar> hv = h.element(h_combo);
    Int l(0);
    for (int i = 0; i < h.n; ++i) {
        Int li = (hv[i] / unit[i]).ceil();
        if (li > l) l = li;
    }
    // Smallest j >= 1 with m^j >= (2l + eps) n / eps.
    Rat bound = (Rat(2) * make_rat(l, Int(1)) + eps) * make_rat(n_to, Int(1)) / eps;
    Int mj = m;
    while (make_rat(mj, Int(1)) < bound) mj *= m;
    auto inner = construct_witness(h, h_combo, mj, eps / 2, budget, unit);
    if (auto* exhausted = std::get_if<BudgetExhausted>(&inner)) return *exhausted;
    const Witness& wj = std::get<Witness>(inner);
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), mj.get_mpz_t(), n_to.get_mpz_t());
    std::vector<Int> coeffs(wj.coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = q * wj.coeffs[j];
    auto res = verify_witness(h, h_combo, n_to, eps, coeffs, unit);
    auto* w = std::get_if<Witness>(&res);
    if (!w) throw InternalError("transported witness failed its exact verification");
    return *w;
}

inline std::variant<Witness, BudgetExhausted> transport_witness(const SubgroupSpec& h,
                                                                const std::vector<Int>& h_combo, const Int& m,
                                                                const Int& n_to, const Rat& eps, long budget) {
    return transport_witness(h, h_combo, m, n_to, eps, budget, ones_unit(h.ctx, h.n));
}

}  // namespace onesided

#endif  // ONESIDED_WITNESS_HPP
