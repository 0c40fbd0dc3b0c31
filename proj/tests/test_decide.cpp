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

#include "onesided/decide.hpp"
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

SubgroupSpec z_n(const Ctx& ctx, int n) {
    std::vector<std::vector<long>> gens(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) gens[i][i] = 1;
    return sub_q(ctx, n, gens);
}

}  // namespace

TEST_CASE("decide on the paper's flagship examples") {
    auto ctx = ctx_rational();
    SECTION("Z^n holds for n = 1..4") {
        for (int n = 1; n <= 4; ++n) {
            auto out = decide(z_n(ctx, n), ones_unit(ctx, n));
            REQUIRE(out.verdict == Verdict::HoldsB);
            REQUIRE(out.positivity.has_value());
        }
    }
    SECTION("Z(1,-1) in R^2 fails with the documented certificate") {
        auto h = sub_q(ctx, 2, {{1, -1}});
        auto out = decide(h, ones_unit(ctx, 2));
        REQUIRE(out.verdict == Verdict::FailsB);
        REQUIRE(out.certificate.has_value());
        const auto& c = *out.certificate;
        REQUIRE(c.tau1.coords[0] == Scalar(ctx, 1));
        REQUIRE(c.tau1.coords[1] == Scalar(ctx, 0));
        REQUIRE(c.tau2.coords[0] == Scalar(ctx, 0));
        REQUIRE(c.tau2.coords[1] == Scalar(ctx, 1));
        REQUIRE(c.lambda == Scalar(ctx, make_rat(1, 2)));
        REQUIRE(c.delta == Scalar(ctx, 1));
        REQUIRE(c.eps0 == Scalar(ctx, make_rat(1, 2)));
        REQUIRE(verify_failure_certificate(h, ones_unit(ctx, 2), c).valid);
    }
    SECTION("Z(2,-2) scales the certificate") {
        auto h = sub_q(ctx, 2, {{2, -2}});
        auto out = decide(h, ones_unit(ctx, 2));
        REQUIRE(out.verdict == Verdict::FailsB);
        REQUIRE(out.certificate->delta == Scalar(ctx, 2));
        REQUIRE(out.certificate->eps0 == Scalar(ctx, 1));
    }
    SECTION("adding the sqrt2 multiple flips the verdict (dense tau1 image)") {
        auto c2 = ctx_sqrt2();
        Scalar th = make_theta(c2);
        auto h = SubgroupSpec::make(c2, 2, {{Scalar(c2, 1), Scalar(c2, -1)}, {th, -th}});
        auto out = decide(h, ones_unit(c2, 2));
        REQUIRE(out.verdict == Verdict::HoldsB);
        REQUIRE(!out.positivity.has_value());  // Z(H) = {(1/2,1/2)} nonempty
        REQUIRE(out.route_ii.holds);
        REQUIRE(out.route_iii.holds);
    }
    SECTION("Z(1,-1,0) in R^3: certificate around zeta = (1/3,1/3,1/3)") {
        auto h = sub_q(ctx, 3, {{1, -1, 0}});
        auto out = decide(h, ones_unit(ctx, 3));
        REQUIRE(out.verdict == Verdict::FailsB);
        const auto& c = *out.certificate;
        REQUIRE(verify_failure_certificate(h, ones_unit(ctx, 3), c).valid);
        // zeta reconstructed from the certificate equals the face point
        for (int i = 0; i < 3; ++i) {
            Scalar zi = c.lambda * c.tau1.coords[i] + (Scalar(ctx, 1) - c.lambda) * c.tau2.coords[i];
            REQUIRE(zi == Scalar(ctx, make_rat(1, 3)));
        }
    }
}

TEST_CASE("failure certificate round-trip and tamper detection") {
    auto ctx = ctx_rational();
    auto h = sub_q(ctx, 2, {{1, -1}});
    auto u = ones_unit(ctx, 2);
    auto out = decide(h, u);
    auto cert = *out.certificate;
    REQUIRE(verify_failure_certificate(h, u, cert).valid);
    SECTION("tampered delta") {
        cert.delta = Scalar(ctx, 2);
        auto chk = verify_failure_certificate(h, u, cert);
        REQUIRE(!chk.valid);
        REQUIRE(chk.reason.find("delta") != std::string::npos);
    }
    SECTION("tampered eps0") {
        cert.eps0 = Scalar(ctx, make_rat(1, 4));
        REQUIRE(!verify_failure_certificate(h, u, cert).valid);
    }
    SECTION("tampered tau1") {
        cert.tau1.coords[0] = Scalar(ctx, make_rat(3, 4));
        cert.tau1.coords[1] = Scalar(ctx, make_rat(1, 4));
        REQUIRE(!verify_failure_certificate(h, u, cert).valid);
    }
    SECTION("candidate sweep: every h' in |a| <= 50 violates the bound at m = 2") {
        std::vector<std::vector<Int>> candidates;
        for (long a = -50; a <= 50; ++a) candidates.push_back({Int(a)});
        REQUIRE(verify_failure_certificate(h, u, cert, candidates, Int(2)).valid);
    }
}

TEST_CASE("route agreement on random rational and quadratic instances") {
    auto ctx = ctx_rational();
    std::mt19937_64 rng(1618);
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<int> sd(1, 4), nd(1, 5);
    int fails = 0, holds = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int s = sd(rng), n = nd(rng);
        std::vector<std::vector<long>> gens(s, std::vector<long>(n, 0));
        for (auto& g : gens)
            for (auto& x : g) x = num(rng);
        auto h = sub_q(ctx, n, gens);
        auto out = decide(h, ones_unit(ctx, n));  // throws on route disagreement
        (out.verdict == Verdict::FailsB ? fails : holds)++;
        if (out.certificate)
            REQUIRE(verify_failure_certificate(h, ones_unit(ctx, n), *out.certificate).valid);
    }
    REQUIRE(fails > 20);
    REQUIRE(holds > 20);
}

TEST_CASE("decide is invariant under unimodular recombination of generators") {
    auto c2 = ctx_sqrt2();
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<long> num(-2, 2);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        int s = 2;
        std::vector<std::vector<Scalar>> gens(s, std::vector<Scalar>(n, Scalar(c2, 0)));
        for (auto& g : gens)
            for (auto& x : g) x = Scalar(c2, num(rng)) + make_theta(c2) * Rat(rng() % 2 ? num(rng) : 0);
        auto h = SubgroupSpec::make(c2, n, gens);
        // unimodular recombination: (g1, g2) -> (g1 + k g2, g2), then swap
        long k = num(rng);
        std::vector<std::vector<Scalar>> gens2 = gens;
        for (int j = 0; j < n; ++j) gens2[0][j] = gens[0][j] + gens[1][j] * Rat(k);
        std::swap(gens2[0], gens2[1]);
        auto h2 = SubgroupSpec::make(c2, n, gens2);
        auto u = ones_unit(c2, n);
        REQUIRE(decide(h, u).verdict == decide(h2, u).verdict);
    }
}

TEST_CASE("empty Z certificate gives direct one-sided witnesses") {
    auto ctx = ctx_rational();
    std::mt19937_64 rng(66);
    std::uniform_int_distribution<long> num(-4, 4);
    auto h = sub_q(ctx, 2, {{1, 1}, {2, -1}});
    auto out = decide(h, ones_unit(ctx, 2));
    REQUIRE(out.verdict == Verdict::HoldsB);
    REQUIRE(out.positivity.has_value());
    const auto& pc = *out.positivity;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Int> hc{Int(num(rng)), Int(num(rng))};
        long m = 2 + static_cast<long>(rng() % 4);
        std::vector<Scalar> hv = h.element(hc);
        // h' = -l v with l large enough gives h - m h' = h + m l v >= 0
        Scalar worst(ctx, 0);
        for (int i = 0; i < 2; ++i) {
            Scalar need = -hv[i] / (pc.element[i] * Rat(m));
            if (worst < need) worst = need;
        }
        Int l = worst.ceil();
        if (l < 0) l = 0;
        for (int i = 0; i < 2; ++i) {
            Scalar slack = hv[i] + pc.element[i] * Rat(m) * make_rat(l, Int(1));
            REQUIRE(slack.sign() >= 0);
        }
    }
}

TEST_CASE("corollary 9.2 route") {
    auto ctx = ctx_rational();
    SECTION("Z(1,-1) fails (tau1 image is Z)") {
        REQUIRE(decide_corollary_92(sub_q(ctx, 2, {{1, -1}})) == Verdict::FailsB);
    }
    SECTION("adding sqrt2 multiples holds (tau1 image dense)") {
        auto c2 = ctx_sqrt2();
        Scalar th = make_theta(c2);
        auto h = SubgroupSpec::make(c2, 2, {{Scalar(c2, 1), Scalar(c2, -1)}, {th, -th}});
        REQUIRE(decide_corollary_92(h) == Verdict::HoldsB);
    }
    SECTION("Z(1,-1,0) in R^3: Z is a segment, precondition fails") {
        REQUIRE_THROWS_AS(decide_corollary_92(sub_q(ctx, 3, {{1, -1, 0}})), PreconditionNotMet);
    }
}

TEST_CASE("redundant generating sets leave every verdict unchanged") {
    auto ctx = ctx_rational();
    std::mt19937_64 rng(2025);
    std::uniform_int_distribution<long> num(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        std::vector<std::vector<long>> gens(2, std::vector<long>(n, 0));
        for (auto& g : gens)
            for (auto& x : g) x = num(rng);
        auto base = sub_q(ctx, n, gens);
        // duplicate a generator, add the zero vector, add a sum of the two
        auto padded = gens;
        padded.push_back(gens[0]);
        padded.push_back(std::vector<long>(n, 0));
        std::vector<long> sum(n);
        for (int j = 0; j < n; ++j) sum[j] = gens[0][j] + gens[1][j];
        padded.push_back(sum);
        auto fat = sub_q(ctx, n, padded);
        auto u = ones_unit(ctx, n);
        auto a = decide(base, u);
        auto b = decide(fat, u);
        REQUIRE(a.verdict == b.verdict);
        REQUIRE(a.face.support == b.face.support);
        if (b.certificate) REQUIRE(verify_failure_certificate(fat, u, *b.certificate).valid);
    }
}

TEST_CASE("full pipeline over the quartic field: routes agree and certificates verify") {
    auto c = ctx_sqrt23();
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> num(-2, 2);
    std::uniform_int_distribution<int> sd(1, 3), nd(2, 4);
    int fails = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int s = sd(rng), n = nd(rng);
        std::vector<std::vector<Scalar>> gens(s, std::vector<Scalar>(n, Scalar(c, 0)));
        for (auto& g : gens)
            for (auto& x : g) {
                x = Scalar(c, num(rng));
                if (rng() % 3 == 0) x = x + sqrt2_in(c) * Rat(num(rng));
                if (rng() % 3 == 0) x = x + sqrt3_in(c) * Rat(num(rng));
            }
        auto h = SubgroupSpec::make(c, n, gens);
        auto u = ones_unit(c, n);
        auto out = decide(h, u);  // throws on route disagreement
        REQUIRE(out.route_ii.holds == out.route_iii.holds);
        if (out.certificate) {
            ++fails;
            REQUIRE(verify_failure_certificate(h, u, *out.certificate).valid);
        }
        if (out.positivity) {
            for (const auto& v : out.positivity->element) REQUIRE(v.sign() > 0);
        }
    }
    REQUIRE(fails > 2);
}

TEST_CASE("lopsided cyclic groups get strict certificates (mixing weight regression)") {
    auto ctx = ctx_rational();
    // the min-ratio against the single Z-point would fall below 1/3 here
    // without the mixing condition; the certificate must still reject every
    // candidate strictly
    for (auto gen : std::vector<std::vector<long>>{{4, -1}, {1, -10}, {7, -3}, {9, -1, 0}}) {
        int n = static_cast<int>(gen.size());
        auto h = sub_q(ctx, n, {gen});
        auto u = ones_unit(ctx, n);
        auto out = decide(h, u);
        REQUIRE(out.verdict == Verdict::FailsB);
        const auto& c = *out.certificate;
        REQUIRE(c.lambda == Scalar(ctx, make_rat(1, 2)));
        REQUIRE(verify_failure_certificate(h, u, c).valid);
        std::vector<std::vector<Int>> candidates;
        for (long a = -50; a <= 50; ++a) candidates.push_back({Int(a)});
        for (long m : {2L, 5L}) REQUIRE(verify_failure_certificate(h, u, c, candidates, Int(m)).valid);
        // no candidate is an eps0-witness coordinatewise either
        for (long a = -50; a <= 50; ++a) {
            std::vector<Scalar> x = c.h;
            for (int i = 0; i < n; ++i) x[i] = x[i] - Scalar(ctx, 2 * a * gen[static_cast<std::size_t>(i)]);
            bool is_witness = true;
            for (int i = 0; i < n; ++i)
                if ((x[i] + c.eps0).sign() < 0) is_witness = false;
            REQUIRE(!is_witness);
        }
    }
}
