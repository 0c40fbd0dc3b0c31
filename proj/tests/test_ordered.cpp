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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "onesided/ordered.hpp"
#include "test_fields.hpp"

using namespace onesided;

namespace {

std::vector<Int> iv(const std::vector<long>& v) {
    std::vector<Int> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

IntMatrix imat(const std::vector<std::vector<long>>& rows, int cols) {
    IntMatrix m(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    return m;
}

/// The section-7 flagship: G = Z^2 + Z(sqrt2, sqrt3) with the strict
/// ordering and unit (1, 1).
OrderedGroupSpec flagship() {
    auto c = ctx_sqrt23();
    auto g = SubgroupSpec::make(
        c, 2, {{Scalar(c, 1), Scalar(c, 0)}, {Scalar(c, 0), Scalar(c, 1)}, {sqrt2_in(c), sqrt3_in(c)}});
    return OrderedGroupSpec::make(std::move(g), GroupOrdering::Strict, iv({1, 1, 0}));
}

OrderedGroupSpec z_sqrt2_line() {
    auto c2 = ctx_sqrt2();
    auto g = SubgroupSpec::make(c2, 1, {{Scalar(c2, 1)}, {make_theta(c2)}});
    return OrderedGroupSpec::make(std::move(g), GroupOrdering::Strict, iv({1, 0}));
}

OrderedGroupSpec z2_coordinatewise() {
    auto ctx = ctx_rational();
    auto g = SubgroupSpec::make(ctx, 2, {{Scalar(ctx, 1), Scalar(ctx, 0)}, {Scalar(ctx, 0), Scalar(ctx, 1)}});
    return OrderedGroupSpec::make(std::move(g), GroupOrdering::Coordinatewise, iv({1, 1}));
}

}  // namespace

TEST_CASE("ordered group construction") {
    SECTION("strict ordering requires density: Z^2 is rejected") {
        auto ctx = ctx_rational();
        auto g = SubgroupSpec::make(ctx, 2, {{Scalar(ctx, 1), Scalar(ctx, 0)}, {Scalar(ctx, 0), Scalar(ctx, 1)}});
        REQUIRE_THROWS_AS(OrderedGroupSpec::make(std::move(g), GroupOrdering::Strict, iv({1, 1})),
                          PreconditionNotMet);
    }
    SECTION("flagship constructs") {
        auto g = flagship();
        REQUIRE(g.unit[0] == Scalar(g.g.ctx, 1));
        REQUIRE(g.unit[1] == Scalar(g.g.ctx, 1));
    }
    SECTION("unit must be positive") {
        auto ctx = ctx_rational();
        auto g = SubgroupSpec::make(ctx, 2, {{Scalar(ctx, 1), Scalar(ctx, 0)}, {Scalar(ctx, 0), Scalar(ctx, 1)}});
        REQUIRE_THROWS_AS(OrderedGroupSpec::make(std::move(g), GroupOrdering::Coordinatewise, iv({1, 0})),
                          InvalidUnit);
    }
}

TEST_CASE("check_pure examples") {
    SECTION("Z^2 with H = Z(1,-1): torsion-free") {
        auto g = z2_coordinatewise();
        REQUIRE(check_pure(g, SubgroupInG{imat({{1, -1}}, 2)}).torsion_free);
    }
    SECTION("Z^2 with H = Z(2,0): torsion of order 2 at (1,0)") {
        auto g = z2_coordinatewise();
        auto r = check_pure(g, SubgroupInG{imat({{2, 0}}, 2)});
        REQUIRE(!r.torsion_free);
        REQUIRE(r.torsion->k == 2);
        REQUIRE(r.torsion->g_combo == iv({1, 0}));
    }
    SECTION("flagship H = Z(-1,1): torsion-free") {
        auto g = flagship();
        REQUIRE(check_pure(g, SubgroupInG{imat({{-1, 1, 0}}, 3)}).torsion_free);
    }
    SECTION("dependent generators rejected") {
        auto ctx = ctx_rational();
        auto g = SubgroupSpec::make(ctx, 1, {{Scalar(ctx, 1)}, {Scalar(ctx, 2)}});
        auto spec = OrderedGroupSpec::make(std::move(g), GroupOrdering::Coordinatewise, iv({1, 0}));
        REQUIRE_THROWS_AS(check_pure(spec, SubgroupInG{imat({{1, 0}}, 2)}), DependentGenerators);
    }
}

TEST_CASE("check_pure matches a brute-force torsion search") {
    std::mt19937_64 rng(6174);
    std::uniform_int_distribution<long> ent(-3, 3);
    std::uniform_int_distribution<int> sd(1, 2), td(2, 3);
    auto ctx = ctx_rational();
    for (int trial = 0; trial < 60; ++trial) {
        int t = td(rng), s = sd(rng);
        // G = Z^t with standard generators
        std::vector<std::vector<Scalar>> ggens(t, std::vector<Scalar>(t, Scalar(ctx, 0)));
        for (int i = 0; i < t; ++i) ggens[i][i] = Scalar(ctx, 1);
        auto g = OrderedGroupSpec::make(SubgroupSpec::make(ctx, t, ggens), GroupOrdering::Coordinatewise,
                                        iv(std::vector<long>(t, 1)));
        IntMatrix c(s, t);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < t; ++j) c.at(i, j) = ent(rng);
        auto verdict = check_pure(g, SubgroupInG{c});
        // brute force: some g with coefficients <= 5 and 2 <= k <= 6 has
        // k g in H but g not in H
        IntMatrix ct(t, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < t; ++j) ct.at(j, i) = c.at(i, j);
        auto in_h = [&](const std::vector<Int>& z) { return int_solve(ct, z).has_value(); };
        bool found_torsion = false;
        std::vector<long> z(t, -5);
        while (!found_torsion) {
            std::vector<Int> zc(t);
            bool zero = true;
            for (int j = 0; j < t; ++j) {
                zc[j] = Int(z[j]);
                zero = zero && z[j] == 0;
            }
            if (!zero && !in_h(zc)) {
                for (long k = 2; k <= 6 && !found_torsion; ++k) {
                    std::vector<Int> kz(t);
                    for (int j = 0; j < t; ++j) kz[j] = Int(k) * zc[j];
                    if (in_h(kz)) found_torsion = true;
                }
            }
            int k = t - 1;
            while (k >= 0 && z[k] == 5) --k;
            if (k < 0) break;
            z[k] += 1;
            for (int j = k + 1; j < t; ++j) z[j] = -5;
        }
        if (verdict.torsion_free) {
            // a torsion-free verdict can never coexist with brute-force torsion
            REQUIRE(!found_torsion);
        } else {
            // the brute-force box may miss large witnesses; the returned one
            // must check out exactly either way
            const auto& w = *verdict.torsion;
            std::vector<Int> kg(t);
            for (int j = 0; j < t; ++j) kg[j] = w.k * w.g_combo[j];
            REQUIRE(in_h(kg));
            REQUIRE(!in_h(w.g_combo));
            REQUIRE(w.k >= 2);
        }
    }
}

TEST_CASE("check_convex_sufficient") {
    SECTION("flagship H = Z(-1,1): convex by trivial intersection") {
        auto g = flagship();
        REQUIRE(check_convex_sufficient(g, SubgroupInG{imat({{-1, 1, 0}}, 3)}) ==
                ConvexityVerdict::ConvexByTrivialIntersection);
    }
    SECTION("H containing an order unit: unknown") {
        auto g = flagship();
        REQUIRE(check_convex_sufficient(g, SubgroupInG{imat({{1, 1, 0}}, 3)}) == ConvexityVerdict::Unknown);
    }
    SECTION("H = 0: convex") {
        auto g = flagship();
        REQUIRE(check_convex_sufficient(g, SubgroupInG{IntMatrix(0, 3)}) ==
                ConvexityVerdict::ConvexByTrivialIntersection);
    }
}

TEST_CASE("unperforation verdicts") {
    SECTION("flagship: torsion-free but holey") {
        auto g = flagship();
        SubgroupInG h{imat({{-1, 1, 0}}, 3)};
        auto r = unperforation_verdict(g, h);
        REQUIRE(!r.unperforated);
        REQUIRE(r.decision.verdict == Verdict::FailsB);
        REQUIRE(verify_failure_certificate(h.realize(g), g.unit, *r.decision.certificate).valid);
        REQUIRE(r.instance.has_value());
        // the explicit instance satisfies its defining inequalities exactly
        const auto& inst = *r.instance;
        auto hh = h.realize(g);
        std::vector<Scalar> gx = g.g.element(inst.g_combo);
        std::vector<Scalar> mg(gx.size(), Scalar(g.g.ctx, 0));
        for (std::size_t i = 0; i < gx.size(); ++i)
            mg[i] = gx[i] * make_rat(inst.m, Int(1)) + hh.gens[0][i] * make_rat(inst.positive_shift_k, Int(1));
        if (inst.zero_case) {
            for (const auto& v : mg) REQUIRE(v.is_zero());
        } else {
            for (const auto& v : mg) REQUIRE(v.sign() > 0);
        }
        // ... and g itself admits no shift into the positive cone
        REQUIRE(!detail::shift_into_positive_cone(gx, hh.gens[0]).has_value());
    }
    SECTION("dense line group with H = 0: unperforated") {
        auto g = z_sqrt2_line();
        auto r = unperforation_verdict(g, SubgroupInG{IntMatrix(0, 2)});
        REQUIRE(r.unperforated);
        REQUIRE(r.decision.verdict == Verdict::HoldsB);
    }
    SECTION("flagship H = Z g2: unperforated (kernel of a vertex trace)") {
        auto g = flagship();
        auto r = unperforation_verdict(g, SubgroupInG{imat({{0, 1, 0}}, 3)});
        REQUIRE(r.unperforated);
    }
    SECTION("torsion blocks the verdict") {
        auto g = z2_coordinatewise();
        REQUIRE_THROWS_AS(unperforation_verdict(g, SubgroupInG{imat({{2, 0}}, 2)}), NotPure);
    }
    SECTION("unknown convexity blocks unless asserted") {
        auto g = flagship();
        SubgroupInG h{imat({{1, 1, 0}}, 3)};
        REQUIRE_THROWS_AS(unperforation_verdict(g, h), ConvexityNotEstablished);
        auto r = unperforation_verdict(g, h, /*caller_asserts_convexity=*/true);
        REQUIRE(r.convexity_asserted_by_caller);
        // H contains the order unit (1,1), so Z(H) is empty and (B) holds
        REQUIRE(r.unperforated);
    }
}

TEST_CASE("unperforation equals the property-(B) verdict on both section-7 families") {
    // family 1: primitive pinched cyclic subgroups (holey)
    {
        auto g = flagship();
        std::vector<std::vector<long>> combos{{-1, 1, 0}, {-2, 1, 1}, {1, -3, 1}};
        for (const auto& cc : combos) {
            SubgroupInG h{imat({cc}, 3)};
            auto r = unperforation_verdict(g, h);
            REQUIRE(r.unperforated == (decide(h.realize(g), g.unit).verdict == Verdict::HoldsB));
            REQUIRE(!r.unperforated);
        }
    }
    // family 2: kernels of vertex traces (unperforated)
    {
        auto g = flagship();
        SubgroupInG h{imat({{0, 1, 0}}, 3)};
        auto r = unperforation_verdict(g, h);
        REQUIRE(r.unperforated == (decide(h.realize(g), g.unit).verdict == Verdict::HoldsB));
        REQUIRE(r.unperforated);
    }
}

TEST_CASE("critical_refinable examples") {
    SECTION("flagship with tau ~ tau_1: not refinable, kernel (0,1)") {
        auto g = flagship();
        auto ctx = g.g.ctx;
        auto r = critical_refinable(g, {Scalar(ctx, 1), Scalar(ctx, 0)});
        REQUIRE(!r.refinable);
        REQUIRE((*r.kernel_element)[0].is_zero());
        REQUIRE(!(*r.kernel_element)[1].is_zero());
    }
    SECTION("flagship with tau ~ tau_1 + sqrt2 tau_2: refinable") {
        auto g = flagship();
        auto ctx = g.g.ctx;
        auto r = critical_refinable(g, {Scalar(ctx, 1), sqrt2_in(ctx)});
        REQUIRE(r.refinable);
    }
    SECTION("Z + Z sqrt2 in R^1: the coordinate trace is refinable") {
        auto g = z_sqrt2_line();
        auto r = critical_refinable(g, {Scalar(g.g.ctx, 1)});
        REQUIRE(r.refinable);
    }
    SECTION("non-critical rank is rejected") {
        auto ctx = ctx_rational();
        auto g = SubgroupSpec::make(ctx, 2, {{Scalar(ctx, 1), Scalar(ctx, 0)}, {Scalar(ctx, 0), Scalar(ctx, 1)}});
        auto spec = OrderedGroupSpec::make(std::move(g), GroupOrdering::Coordinatewise, iv({1, 1}));
        REQUIRE_THROWS_AS(critical_refinable(spec, {Scalar(ctx, 1), Scalar(ctx, 0)}), NotCritical);
    }
}

TEST_CASE("critical_refinable agrees with the kernel-rank oracle on 100 random critical groups") {
    auto c = ctx_sqrt23();
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> small(-3, 3);
    std::uniform_int_distribution<long> pos(0, 3);
    int checked = 0, refinable_seen = 0;
    while (checked < 100) {
        // G = Z^2 + Z(x, y) with x = q0 + q1 sqrt2, y = r0 + r1 sqrt3 and
        // q1 r1 != 0 (keeps {1, x, y} independent over Q, so G is critical)
        long q1 = small(rng), r1 = small(rng);
        if (q1 == 0 || r1 == 0) continue;
        Scalar x = Scalar(c, small(rng)) + sqrt2_in(c) * Rat(q1);
        Scalar y = Scalar(c, small(rng)) + sqrt3_in(c) * Rat(r1);
        auto gg = SubgroupSpec::make(c, 2,
                                     {{Scalar(c, 1), Scalar(c, 0)}, {Scalar(c, 0), Scalar(c, 1)}, {x, y}});
        auto g = OrderedGroupSpec::make(std::move(gg), GroupOrdering::Strict, iv({1, 1, 0}));
        // random nonnegative trace coefficients, not both zero
        Scalar t1 = Scalar(c, pos(rng)) + (rng() % 2 ? sqrt2_in(c) : Scalar(c, 0));
        Scalar t2 = Scalar(c, pos(rng)) + (rng() % 3 == 0 ? sqrt3_in(c) : Scalar(c, 0));
        if (t1.is_zero() && t2.is_zero()) continue;
        ++checked;
        auto r = critical_refinable(g, {t1, t2});
        // independent oracle: refinable iff the stacked value slices have
        // full rank 3 over Q
        std::vector<Scalar> values{t1, t2, t1 * x + t2 * y};
        RatMatrix w = rational_components(values);
        bool oracle = rank_q(w) == 3;
        REQUIRE(r.refinable == oracle);
        refinable_seen += r.refinable;
        if (!r.refinable) {
            // returned kernel element is exactly in the kernel
            Scalar v = t1 * (*r.kernel_element)[0] + t2 * (*r.kernel_element)[1];
            REQUIRE(v.is_zero());
        }
    }
    REQUIRE(refinable_seen > 10);
    REQUIRE(refinable_seen < 90);
}
