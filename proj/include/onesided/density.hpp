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

#ifndef ONESIDED_DENSITY_HPP
#define ONESIDED_DENSITY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "onesided/linalg.hpp"

namespace onesided {

/// Finitely generated subgroup H of R^n, given by a list of generators over
/// Q(theta). Generators are not required to be independent.
struct SubgroupSpec {
    Ctx ctx;
    int n = 0;
    std::vector<std::vector<Scalar>> gens;

    int count() const { return static_cast<int>(gens.size()); }

    Matrix generator_matrix() const { return Matrix::from_rows(ctx, gens, n); }

    /// Element sum_j combo_j * h_j.
    std::vector<Scalar> element(const std::vector<Int>& combo) const {
        if (static_cast<int>(combo.size()) != count()) throw InputError("combination length mismatch");
        std::vector<Scalar> e(n, Scalar(ctx, 0));
        for (int j = 0; j < count(); ++j) {
            if (combo[j] == 0) continue;
            Rat f = make_rat(combo[j], Int(1));
            for (int i = 0; i < n; ++i) e[i] = e[i] + gens[j][i] * f;
        }
        return e;
    }

    /// Projection to a coordinate subset (in increasing index order).
    SubgroupSpec project(const std::vector<int>& coords) const {
        SubgroupSpec out;
        out.ctx = ctx;
        out.n = static_cast<int>(coords.size());
        out.gens.reserve(gens.size());
        for (const auto& g : gens) {
            std::vector<Scalar> row;
            row.reserve(coords.size());
            for (int c : coords) row.push_back(g[c]);
            out.gens.push_back(std::move(row));
        }
        return out;
    }

    static SubgroupSpec make(Ctx ctx, int n, std::vector<std::vector<Scalar>> gens) {
        for (const auto& g : gens)
            if (static_cast<int>(g.size()) != n) throw InputError("generator length differs from ambient dimension");
        return SubgroupSpec{std::move(ctx), n, std::move(gens)};
    }
};

enum class LineKind { Zero, Discrete, Dense };

/// Classification of the subgroup of R generated by finitely many values:
/// zero, delta*Z for delta > 0, or dense. For the discrete case, `bezout`
/// holds integers with sum_i bezout[i]*values[i] = delta.
struct LineGroupClass {
    LineKind kind = LineKind::Zero;
    std::optional<Scalar> delta;
    std::vector<Int> bezout;
};

/// Decides Zero/Discrete/Dense from the Q-rank of the theta-coefficient
/// slices: rank 0 means all values vanish, rank 1 means a cyclic subgroup of
/// R (with a canonical generator), rank >= 2 means a dense subgroup.
inline LineGroupClass classify_line_group(const std::vector<Scalar>& values) {
    LineGroupClass out;
    if (values.empty()) return out;
    int s = static_cast<int>(values.size());
    // Row per value: its rational coefficient vector.
    RatMatrix rows(s);
    for (int i = 0; i < s; ++i) {
        values[i].check_ctx(values.front());
        rows[i] = values[i].coeffs();
    }
    int r = rank_q(rows);
    if (r == 0) return out;
    if (r >= 2) {
        out.kind = LineKind::Dense;
        return out;
    }
    // Rank 1: all values are rational multiples q_i * v of the first nonzero
    // value v; the group is (gcd of the q_i) * v * Z.
    int pivot = -1;
    for (int i = 0; i < s; ++i)
        if (!values[i].is_zero()) {
            pivot = i;
            break;
        }
    std::vector<Rat> q(s, Rat(0));
    Scalar inv = values[pivot].inverse();
    for (int i = 0; i < s; ++i) {
        if (values[i].is_zero()) continue;
        Scalar ratio = values[i] * inv;
        if (!ratio.is_rational()) throw InternalError("classify: rank-1 values not rationally dependent");
        q[i] = ratio.rational_value();
    }
    RatGcdResult g = rat_gcd_bezout(q);
    // delta = |g.gen * v|; orient the Bezout combination onto +delta.
    Scalar delta = values[pivot] * g.gen;
    std::vector<Int> bez = g.coeff;
    if (delta.sign() < 0) {
        delta = -delta;
        for (Int& x : bez) x = -x;
    }
    out.kind = LineKind::Discrete;
    out.delta = delta;
    out.bezout = std::move(bez);
    return out;
}

/// Verdict for property (A): H dense in the real span R.H. On failure,
/// `witness` is a nonzero integer vector m realizable as (phi(h_1), ...,
/// phi(h_s)) for a real linear functional phi.
struct PropertyAResult {
    bool holds = true;
    std::optional<std::vector<Int>> witness;
};

/// Theorem-A decision: H fails (A) iff the real column space of the
/// generator matrix contains a nonzero integer vector. Computed exactly over
/// Q(theta) via kernel slices: m must be orthogonal to the kernel of G^t,
/// whose theta-coefficient slices stack into a rational matrix W; property
/// (A) holds iff ker_Q(W) = 0.
inline PropertyAResult property_a(const SubgroupSpec& h) {
    if (h.count() == 0) return {};
    Matrix gt = h.generator_matrix().transposed();
    std::vector<std::vector<Scalar>> ker = kernel(gt);
    RatMatrix slices;
    for (const auto& u : ker)
        for (auto& slice : rational_components(u)) slices.push_back(std::move(slice));
    if (slices.empty()) slices.push_back(std::vector<Rat>(h.count(), Rat(0)));
    auto null_basis = kernel_q(slices);
    if (null_basis.empty()) return {};
    PropertyAResult res;
    res.holds = false;
    res.witness = to_primitive_integer(null_basis.front());
    return res;
}

}  // namespace onesided

#endif  // ONESIDED_DENSITY_HPP
