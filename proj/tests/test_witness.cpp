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

#include "onesided/witness.hpp"
#include "test_fields.hpp"

using namespace onesided;

namespace {

SubgroupSpec sub_q(const Ctx& ctx, int n, const std::vector<std::vector<long>>& gens) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& g : gens) {
        std::vector<Scalar> row;
        for (long x : g) row.emplace_back(ctx, x);
        rows.push_back(std::move(row));
    }
    return SubgroupSpec::make(ctx, n, rows);
}

SubgroupSpec pinched_sqrt2(const Ctx& c2) {
    Scalar th = make_theta(c2);
    return SubgroupSpec::make(c2, 2, {{Scalar(c2, 1), Scalar(c2, -1)}, {th, -th}});
}

std::vector<Int> iv(const std::vector<long>& v) {
    std::vector<Int> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

}  // namespace

TEST_CASE("verify_witness examples") {
    auto ctx = ctx_rational();
    SECTION("Z^2, h = (3,5), m = 2, h' = (1,2): slack (1,1)") {
        auto h = sub_q(ctx, 2, {{1, 0}, {0, 1}});
        auto res = verify_witness(h, iv({3, 5}), Int(2), make_rat(1, 100), iv({1, 2}));
        auto* w = std::get_if<Witness>(&res);
        REQUIRE(w);
        REQUIRE(w->slack[0] == Scalar(ctx, 1));
        REQUIRE(w->slack[1] == Scalar(ctx, 1));
    }
    SECTION("Z(1,-1), h = (1,-1), m = 2, h' = 0 rejected at eps = 1/2") {
        auto h = sub_q(ctx, 2, {{1, -1}});
        auto res = verify_witness(h, iv({1}), Int(2), make_rat(1, 2), iv({0}));
        auto* rej = std::get_if<WitnessRejected>(&res);
        REQUIRE(rej);
        REQUIRE(rej->coordinate == 1);
        REQUIRE(rej->slack_value == Scalar(ctx, -1));
    }
    SECTION("pinched sqrt2 group: accepted witness within eps") {
        auto c2 = ctx_sqrt2();
        auto h = pinched_sqrt2(c2);
        // 2(a1 + a2 sqrt2) in (1 - eps, 1]: a = (-8, 6) gives 1 - 2(6 sqrt2 - 8) ~ 0.0294
        auto res = verify_witness(h, iv({1, 0}), Int(2), make_rat(1, 10), iv({-8, 6}));
        REQUIRE(std::holds_alternative<Witness>(res));
    }
    SECTION("precondition errors") {
        auto h = sub_q(ctx, 1, {{1}});
        REQUIRE_THROWS_AS(verify_witness(h, iv({1}), Int(1), make_rat(1, 2), iv({0})), InputError);
        REQUIRE_THROWS_AS(verify_witness(h, iv({1}), Int(2), Rat(0), iv({0})), InputError);
    }
}

TEST_CASE("witness monotone in eps") {
    auto c2 = ctx_sqrt2();
    auto h = pinched_sqrt2(c2);
    auto res = construct_witness(h, iv({1, 0}), Int(2), make_rat(1, 10), 64);
    auto* w = std::get_if<Witness>(&res);
    REQUIRE(w);
    // a witness for eps works verbatim for any larger eps
    for (long num = 1; num <= 5; ++num) {
        auto res2 = verify_witness(h, iv({1, 0}), Int(2), make_rat(1, 10) + make_rat(num, 7), w->coeffs);
        REQUIRE(std::holds_alternative<Witness>(res2));
    }
}

TEST_CASE("construct_witness tiers") {
    auto ctx = ctx_rational();
    SECTION("Z^n: instant witness via the positive combination") {
        auto h = sub_q(ctx, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        auto res = construct_witness(h, iv({4, -9, 2}), Int(2), make_rat(1, 2), 64);
        auto* w = std::get_if<Witness>(&res);
        REQUIRE(w);
        for (const auto& sl : w->slack) REQUIRE(sl.sign() >= 0);
    }
    SECTION("Z(1,1): Prop 5.1 path with l = 3 for h = (-7,-7), m = 3") {
        auto h = sub_q(ctx, 2, {{1, 1}});
        auto res = construct_witness(h, iv({-7}), Int(3), make_rat(1, 100), 64);
        auto* w = std::get_if<Witness>(&res);
        REQUIRE(w);
        REQUIRE(w->coeffs == iv({-3}));
        REQUIRE(w->slack[0] == Scalar(ctx, 2));
        REQUIRE(w->slack[1] == Scalar(ctx, 2));
    }
    SECTION("pinched sqrt2 group at eps = 1/10 succeeds within radius 20") {
        auto c2 = ctx_sqrt2();
        auto h = pinched_sqrt2(c2);
        auto res = construct_witness(h, iv({1, 0}), Int(2), make_rat(1, 10), 20);
        auto* w = std::get_if<Witness>(&res);
        REQUIRE(w);
        for (int i = 0; i < 2; ++i) REQUIRE((w->slack[i] + Scalar(c2, make_rat(1, 10))).sign() >= 0);
    }
    SECTION("failing group raises NoWitnessExists with a verified certificate") {
        auto h = sub_q(ctx, 2, {{1, -1}});
        try {
            construct_witness(h, iv({1}), Int(2), make_rat(1, 10), 8);
            FAIL("expected NoWitnessExists");
        } catch (const NoWitnessExists& e) {
            REQUIRE(verify_failure_certificate(h, ones_unit(ctx, 2), e.certificate).valid);
        }
    }
    SECTION("budget exhaustion is reported as such") {
        auto c2 = ctx_sqrt2();
        auto h = pinched_sqrt2(c2);
        // eps = 1/1000 needs far more than radius 2
        auto res = construct_witness(h, iv({1, 0}), Int(2), make_rat(1, 1000), 2);
        auto* b = std::get_if<BudgetExhausted>(&res);
        REQUIRE(b);
        REQUIRE(b->max_radius == 2);
    }
    SECTION("trivial group H = {0}") {
        auto h = sub_q(ctx, 2, {});
        auto res = construct_witness(h, {}, Int(2), make_rat(1, 10), 4);
        REQUIRE(std::holds_alternative<Witness>(res));
    }
}

TEST_CASE("every returned witness passes exact re-verification") {
    auto c2 = ctx_sqrt2();
    auto h = pinched_sqrt2(c2);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> hc(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Int> combo = iv({hc(rng), hc(rng)});
        auto res = construct_witness(h, combo, Int(2 + trial % 3), make_rat(1, 10), 64);
        auto* w = std::get_if<Witness>(&res);
        REQUIRE(w);
        auto again = verify_witness(h, combo, w->m, w->eps, w->coeffs);
        REQUIRE(std::holds_alternative<Witness>(again));
    }
}

TEST_CASE("transport_witness examples and grid") {
    auto ctx = ctx_rational();
    SECTION("Z^2, m = 2 to n = 3, h = (3,5), eps = 1/2") {
        auto h = sub_q(ctx, 2, {{1, 0}, {0, 1}});
        auto res = transport_witness(h, iv({3, 5}), Int(2), Int(3), make_rat(1, 2), 64);
        auto* w = std::get_if<Witness>(&res);
        REQUIRE(w);
        REQUIRE(w->m == 3);
        auto again = verify_witness(h, iv({3, 5}), Int(3), make_rat(1, 2), w->coeffs);
        REQUIRE(std::holds_alternative<Witness>(again));
    }
    SECTION("degenerate remainder: m = 2 to n = 4") {
        auto h = sub_q(ctx, 2, {{1, 0}, {0, 1}});
        auto res = transport_witness(h, iv({3, 5}), Int(2), Int(4), make_rat(1, 2), 64);
        REQUIRE(std::holds_alternative<Witness>(res));
    }
    SECTION("pinched sqrt2 group: m = 2 to n = 5 at eps = 1/5") {
        auto c2 = ctx_sqrt2();
        auto h = pinched_sqrt2(c2);
        auto res = transport_witness(h, iv({1, 0}), Int(2), Int(5), make_rat(1, 5), 4096);
        REQUIRE(std::holds_alternative<Witness>(res));
    }
    SECTION("full (m, n) grid on Z^2") {
        auto h = sub_q(ctx, 2, {{1, 0}, {0, 1}});
        for (long m = 2; m <= 5; ++m)
            for (long n = 2; n <= 5; ++n) {
                auto res = transport_witness(h, iv({2, -3}), Int(m), Int(n), make_rat(1, 3), 64);
                REQUIRE(std::holds_alternative<Witness>(res));
            }
    }
}

TEST_CASE("poisoned float heuristics leave search verdicts unchanged") {
    auto c2 = ctx_sqrt2();
    auto h = pinched_sqrt2(c2);
    auto normal = construct_witness(h, iv({1, 0}), Int(2), make_rat(1, 10), 32);
    float_heuristics_poisoned() = true;
    auto poisoned = construct_witness(h, iv({1, 0}), Int(2), make_rat(1, 10), 32);
    float_heuristics_poisoned() = false;
    REQUIRE(std::holds_alternative<Witness>(normal) == std::holds_alternative<Witness>(poisoned));
    if (auto* w = std::get_if<Witness>(&poisoned)) {
        auto again = verify_witness(h, iv({1, 0}), Int(2), make_rat(1, 10), w->coeffs);
        REQUIRE(std::holds_alternative<Witness>(again));
    }
}

TEST_CASE("a HoldsB group yields witnesses for 10 random (h, m, eps=1/100) triples") {
    auto ctx = ctx_rational();
    // Z(H) = F face instance: holds with a nonempty Z-set
    auto h = sub_q(ctx, 3, {{1, 1, 0}, {2, 0, 0}});
    REQUIRE(decide(h, ones_unit(ctx, 3)).verdict == Verdict::HoldsB);
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<long> hc(-4, 4);
    const long moduli[] = {2, 3, 5};
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Int> target = iv({hc(rng), hc(rng)});
        auto res = construct_witness(h, target, Int(moduli[trial % 3]), make_rat(1, 100), 64);
        REQUIRE(std::holds_alternative<Witness>(res));
    }
}
