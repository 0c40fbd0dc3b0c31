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

#ifndef ONESIDED_FACE_HPP
#define ONESIDED_FACE_HPP

#include <future>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "onesided/density.hpp"
#include "onesided/simplex.hpp"

namespace onesided {

struct InvalidUnit : InputError {
    explicit InvalidUnit(const std::string& w) : InputError(w) {}
};

/// Normalized positive functional on R^n: coordinates a_i >= 0 with
/// sum a_i u_i = 1 for the ambient order unit u.
struct TracePoint {
    std::vector<Scalar> coords;

    Scalar value_at(const std::vector<Scalar>& x) const {
        if (coords.empty()) throw InputError("empty trace");
        if (x.size() != coords.size()) throw InputError("trace applied to wrong dimension");
        Scalar acc(coords.front().ctx(), 0);
        for (std::size_t i = 0; i < coords.size(); ++i) acc = acc + coords[i] * x[i];
        return acc;
    }
};

inline void check_unit(const std::vector<Scalar>& u) {
    if (u.empty()) throw InvalidUnit("empty order unit");
    for (const Scalar& x : u)
        if (x.sign() <= 0) throw InvalidUnit("order unit must have strictly positive coordinates");
}

inline std::vector<Scalar> ones_unit(const Ctx& ctx, int n) {
    return std::vector<Scalar>(n, Scalar(ctx, 1));
}

/// Is tau a valid TracePoint for unit u (coords >= 0, sum coords*u == 1)?
inline bool is_valid_trace(const TracePoint& t, const std::vector<Scalar>& u) {
    if (t.coords.size() != u.size()) return false;
    const Ctx& ctx = u.front().ctx();
    Scalar total(ctx, 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (t.coords[i].sign() < 0) return false;
        total = total + t.coords[i] * u[i];
    }
    return total == Scalar(ctx, 1);
}

/// Integer combination of generators that lands in the strictly positive
/// cone; witnesses Z(H) = empty via Gordan's alternative.
struct PositivityCertificate {
    std::vector<Int> combo;           // x in Z^s
    std::vector<Scalar> element;      // v = sum x_i h_i, all coordinates > 0
    Scalar margin;                    // exact min coordinate of v
};

using ZSetResult = std::variant<PositivityCertificate, TracePoint>;  // Empty | Nonempty

inline bool z_is_empty(const ZSetResult& r) { return std::holds_alternative<PositivityCertificate>(r); }

/// Decides Z(H) = empty (equivalently H meets the strictly positive cone)
/// via Gordan's alternatives on the generator matrix; the nonnegative
/// alternative is renormalized to the weighted simplex sum a_i u_i = 1.
inline ZSetResult z_set_empty(const SubgroupSpec& h, const std::vector<Scalar>& u) {
    check_unit(u);
    if (static_cast<int>(u.size()) != h.n) throw InvalidUnit("unit dimension mismatch");
    const Ctx& ctx = h.ctx;
    GordanResult g = gordan(h.generator_matrix());
    if (g.y) {
        std::vector<Scalar> a = *g.y;
        Scalar total(ctx, 0);
        for (int i = 0; i < h.n; ++i) total = total + a[i] * u[i];
        Scalar inv = total.inverse();
        for (auto& x : a) x = x * inv;
        return TracePoint{std::move(a)};
    }
    std::vector<Scalar> v = h.element(*g.x);
    Scalar margin = v.front();
    for (const Scalar& x : v)
        if (x < margin) margin = x;
    if (margin.sign() <= 0) throw InternalError("positivity certificate without positive margin");
    return PositivityCertificate{*g.x, std::move(v), std::move(margin)};
}

/// The smallest face F of the trace simplex containing Z(H): its support
/// I = {i : some Z-point has a_i > 0}, one support LP per coordinate, plus a
/// relative-interior point nu (average of the per-coordinate maximizers).
struct FaceDescriptor {
    std::vector<int> support;                  // increasing coordinate indices
    int ambient_n = 0;
    std::vector<Scalar> unit;
    std::optional<TracePoint> interior_point;  // nu; set iff support nonempty
};

/// Number of worker threads for the per-coordinate support LPs (CLI
/// --threads; 1 keeps everything sequential and deterministic by
/// construction, parallel runs give identical results since the LPs are
/// independent).
inline int& face_lp_threads() {
    static int n = 1;
    return n;
}

namespace detail {

/// LP constraint block for {a : G a = 0, sum a_i u_i = 1, a >= 0}.
inline LPProblem z_membership_lp(const SubgroupSpec& h, const std::vector<Scalar>& u,
                                 std::vector<Scalar> objective) {
    const Ctx& ctx = h.ctx;
    int s = h.count();
    Matrix cons(ctx, s + 1, h.n);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < h.n; ++j) cons.at(i, j) = h.gens[i][j];
    for (int j = 0; j < h.n; ++j) cons.at(s, j) = u[j];
    std::vector<Scalar> rhs(s + 1, Scalar(ctx, 0));
    rhs[s] = Scalar(ctx, 1);
    return LPProblem{std::move(cons), std::move(rhs), std::move(objective)};
}

}  // namespace detail

inline FaceDescriptor smallest_face(const SubgroupSpec& h, const std::vector<Scalar>& u) {
    check_unit(u);
    if (static_cast<int>(u.size()) != h.n) throw InvalidUnit("unit dimension mismatch");
    const Ctx& ctx = h.ctx;
    FaceDescriptor face;
    face.ambient_n = h.n;
    face.unit = u;
    auto solve_coord = [&](int i) -> std::optional<std::vector<Scalar>> {
        std::vector<Scalar> obj(h.n, Scalar(ctx, 0));
        obj[i] = Scalar(ctx, 1);
        LPResult res = solve_lp(detail::z_membership_lp(h, u, std::move(obj)));
        if (auto* opt = std::get_if<LPOptimal>(&res)) {
            if (opt->value.sign() > 0) return opt->x;
            return std::nullopt;  // coordinate pinned to zero on Z
        }
        if (std::holds_alternative<LPInfeasible>(res)) return std::nullopt;  // Z empty
        throw InternalError("support LP cannot be unbounded on the simplex");
    };
    std::vector<std::optional<std::vector<Scalar>>> maximizers(h.n);
    if (face_lp_threads() > 1) {
        std::vector<std::future<std::optional<std::vector<Scalar>>>> futs;
        futs.reserve(h.n);
        for (int i = 0; i < h.n; ++i) futs.push_back(std::async(std::launch::async, solve_coord, i));
        for (int i = 0; i < h.n; ++i) maximizers[i] = futs[i].get();
    } else {
        for (int i = 0; i < h.n; ++i) maximizers[i] = solve_coord(i);
    }
    std::vector<std::vector<Scalar>> points;
    for (int i = 0; i < h.n; ++i)
        if (maximizers[i]) {
            face.support.push_back(i);
            points.push_back(*maximizers[i]);
        }
    if (!face.support.empty()) {
        std::vector<Scalar> nu(h.n, Scalar(ctx, 0));
        Rat inv_count = make_rat(1, static_cast<long>(points.size()));
        for (const auto& p : points)
            for (int j = 0; j < h.n; ++j) nu[j] = nu[j] + p[j] * inv_count;
        face.interior_point = TracePoint{std::move(nu)};
    }
    return face;
}

/// ker tau inside G: the saturated lattice of integer combinations z with
/// tau(sum z_j g_j) = 0, extracted from the integer kernel of the stacked
/// theta-slices of the value row.
struct KernelSubgroup {
    std::vector<std::vector<Int>> combos;  // basis of the kernel lattice
    SubgroupSpec subgroup;                 // the corresponding generators
};

inline KernelSubgroup kernel_of_trace(const SubgroupSpec& g, const TracePoint& tau) {
    const Ctx& ctx = g.ctx;
    int t = g.count();
    std::vector<Scalar> values(t, Scalar(ctx, 0));
    for (int j = 0; j < t; ++j) values[j] = tau.value_at(g.gens[j]);
    std::vector<std::vector<Rat>> slices = rational_components(values);
    // Clear denominators per slice row; integer kernels are unchanged.
    std::vector<std::vector<Int>> int_rows;
    for (const auto& row : slices) {
        Int den(1);
        for (const Rat& x : row) den = int_lcm(den, Int(x.get_den()));
        std::vector<Int> r(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) r[j] = Int(row[j].get_num()) * (den / Int(row[j].get_den()));
        int_rows.push_back(std::move(r));
    }
    IntMatrix w = IntMatrix::from_rows(int_rows, t);
    KernelSubgroup out;
    out.combos = int_kernel_basis(w);
    std::vector<std::vector<Scalar>> gens;
    gens.reserve(out.combos.size());
    for (const auto& z : out.combos) gens.push_back(g.element(z));
    out.subgroup = SubgroupSpec::make(ctx, g.n, std::move(gens));
    return out;
}

/// Z_G(ker tau) data: the kernel subgroup, its smallest face, and the
/// emptiness alternative (a Z-point or a positivity certificate).
struct ZOfKernelResult {
    KernelSubgroup kernel;
    FaceDescriptor face;
    ZSetResult z;
};

inline ZOfKernelResult z_set_of_kernel(const SubgroupSpec& g, const std::vector<Scalar>& u, const TracePoint& tau) {
    check_unit(u);
    if (!is_valid_trace(tau, u)) throw InputError("tau is not a valid trace point for the given unit");
    ZOfKernelResult out{kernel_of_trace(g, tau), {}, TracePoint{}};
    out.face = smallest_face(out.kernel.subgroup, u);
    out.z = z_set_empty(out.kernel.subgroup, u);
    return out;
}

}  // namespace onesided

#endif  // ONESIDED_FACE_HPP
