/*
   Copyright 2026 The pnpair Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pnpair/certify.hpp"

namespace {

using namespace pnpair;
using u64 = std::uint64_t;
using namespace pnpair::certify;
using ff::Poly;

/// Number of distinct prime factors by trial division.
std::size_t omega_trial(BigInt m) {
    std::size_t w = 0;
    for (BigInt d = 2; d * d <= m; ++d) {
        if (m % d != 0) continue;
        ++w;
        while (m % d == 0) m /= d;
    }
    return w + (m > 1 ? 1 : 0);
}

Status run(u64 q, unsigned n, const std::string& rules) { return classify_pair(q, n, 3, 2, parse_strategy(rules)).status; }

TEST(PairData, FactorsTheOrderAndPattern) {
    const auto d = pair_data(27, 4);
    EXPECT_EQ(d.p, 3u);
    EXPECT_EQ(d.k, 3u);
    EXPECT_EQ(d.order.value(), big_pow(BigInt(27), 4) - 1);
    EXPECT_EQ(d.pattern.degrees, ff::xn_pattern(27, 4).degrees);
    EXPECT_TRUE(d.order.is_complete());
    EXPECT_THROW((void)pair_data(12, 3), std::invalid_argument);
}

TEST(Corollary, ConditionMatchesExactIntegerOracle) {
    for (const auto& [q, n] : std::vector<std::pair<u64, unsigned>>{{2, 17}, {2, 30}, {3, 20}, {5, 12}, {64, 3}, {101, 6}}) {
        const auto d = pair_data(q, n);
        const auto pp = ntheory::prime_power(q);
        const BigInt W = big_pow(BigInt(2), omega_trial(big_pow(BigInt(q), n) - 1));
        const BigInt Wq = big_pow(BigInt(2), ff::factor_xn_minus_1(ff::BaseField(pp->prime, pp->exponent), n).factors.size());
        const BigInt rhs = BigInt(6 * W * W * Wq);
        // q^(n/2) >= rhs iff q^n >= rhs^2
        const bool want = big_pow(BigInt(q), n) >= rhs * rhs;
        EXPECT_EQ(corollary_condition(d, 3, 2).holds, want) << q << "," << n;
    }
    EXPECT_TRUE(corollary_condition(pair_data(2, 17), 3, 2).holds);
    EXPECT_FALSE(corollary_condition(pair_data(2, 30), 3, 2).holds);
}

TEST(Sieve, DeltaAndDeltaCapitalMatchTheirDefinitions) {
    for (const auto& [q, n, ell, g] : std::vector<std::tuple<u64, unsigned, std::string, std::string>>{
             {23, 22, "gcd210", "1"}, {23, 22, "gcd210", "linear"}, {41, 3, "gcd2", "1"}, {9239, 7, "gcd210", "1"}, {16, 45, "105", "linear"}}) {
        const auto d = pair_data(q, n);
        const auto r = sieve_condition(d, 3, 2, EllSpec::parse(ell), GSpec::parse(g));
        BigRational delta = 1;
        for (const auto& pr : r.sieve_primes) delta -= BigRational(2, pr);
        for (const auto deg : r.sieve_degrees) delta -= BigRational(1, big_pow(BigInt(q), deg));
        delta.canonicalize();
        EXPECT_EQ(r.delta, delta);
        EXPECT_EQ(r.r, r.sieve_primes.size());
        EXPECT_EQ(r.s, r.sieve_degrees.size());
        if (delta > 0) {
            BigRational Delta = BigRational(2 * r.r + r.s - 1) / delta + 2;
            Delta.canonicalize();
            EXPECT_EQ(r.Delta, Delta);
            // q^(n/2) >= 6 W(l)^2 W_q(g) Delta, decided exactly
            const BigRational rhs = BigRational(BigInt(6 * r.W_ell * r.W_ell * r.Wq_g)) * Delta;
            const BigRational lhs_sq = BigRational(big_pow(BigInt(q), n));
            EXPECT_EQ(r.holds, lhs_sq >= rhs * rhs);
        } else {
            EXPECT_FALSE(r.holds);
        }
    }
}

TEST(Sieve, ExplicitEllMustDivideTheOrder) {
    EXPECT_THROW((void)sieve_condition(pair_data(7, 3), 3, 2, EllSpec::exact(BigInt(5)), GSpec::one()), std::invalid_argument);
}

TEST(Sieve, ExplicitGMustDivideXn1) {
    EXPECT_THROW((void)sieve_condition(pair_data(13, 12), 3, 2, EllSpec::exact(BigInt(210)), GSpec::exact(Poly({2, 0, 1}))),
                 std::invalid_argument);
}

TEST(Sieve, ExceptionalPairsNeedTheLinearFactors) {
    for (const auto& [q, n] : std::vector<std::pair<u64, unsigned>>{
             {32, 31}, {27, 26}, {27, 52}, {25, 24}, {25, 48}, {49, 48}, {23, 22}, {23, 44}, {31, 30}, {37, 36}, {41, 40}, {43, 42}, {47, 46}, {53, 52}}) {
        EXPECT_NE(run(q, n, "sieve:gcd210/1"), Status::ProvedInB) << q << "," << n;
        EXPECT_EQ(run(q, n, "sieve:gcd210/linear"), Status::ProvedInB) << q << "," << n;
    }
}

TEST(Sieve, PublishedSecondStageRecipes) {
    EXPECT_EQ(run(41, 3, "sieve:2/1"), Status::ProvedInB);
    EXPECT_EQ(run(181, 3, "sieve:6/1"), Status::ProvedInB);
    EXPECT_EQ(run(31, 5, "sieve:6/1"), Status::ProvedInB);
    EXPECT_EQ(run(5, 10, "sieve:6/1"), Status::ProvedInB);
    EXPECT_EQ(run(13, 12, "sieve:210/[12,0,1]"), Status::ProvedInB);
    EXPECT_EQ(run(16, 45, "sieve:105/linear"), Status::ProvedInB);
    for (const u64 q : {32, 49, 53, 61, 67, 73}) {
        EXPECT_NE(run(q, 4, "sieve:gcd30/1"), Status::ProvedInB) << q;
        EXPECT_EQ(run(q, 4, "sieve:gcd6/1"), Status::ProvedInB) << q;
    }
    // still open after both quartic stages
    for (const u64 q : {47, 83}) EXPECT_NE(run(q, 4, "sieve:gcd30/1,sieve:gcd6/1"), Status::ProvedInB) << q;
    EXPECT_NE(run(31, 5, "sieve:gcd30/1"), Status::ProvedInB);
}

TEST(Sieve, CubicFirstStageLeavesThePublishedList) {
    const std::vector<u64> published{2, 4, 8, 16, 3, 9, 27, 81, 5, 25, 7, 49, 11, 121, 13, 17, 19, 23, 29, 31, 37, 41, 43, 61, 67, 71, 79, 151, 181, 211, 331};
    std::vector<u64> left;
    for (const u64 q : ntheory::prime_powers_in(2, 400))
        if (run(q, 3, "sieve:gcd30/1") != Status::ProvedInB) left.push_back(q);
    std::vector<u64> want = published;
    std::sort(want.begin(), want.end());
    EXPECT_EQ(left, want);
}

TEST(Sieve, QuarticFirstStageLeavesThePublishedList) {
    std::vector<u64> want{2, 4, 8, 16, 32, 3, 9, 27, 5, 25, 7, 49, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 61, 67, 73, 83};
    std::sort(want.begin(), want.end());
    std::vector<u64> left;
    for (const u64 q : ntheory::prime_powers_in(2, 400))
        if (run(q, 4, "sieve:gcd30/1") != Status::ProvedInB) left.push_back(q);
    EXPECT_EQ(left, want);
}

TEST(Sieve, IdentityHoldsByExactCounts) {
    const auto ctx = freeness::FreenessContext::make(2, 1, 4);
    std::mt19937_64 rng(19);
    const auto& F = ctx->field();
    for (int i = 0; i < 10; ++i) {
        std::vector<u64> c1{rng() % 16, rng() % 16, 1 + rng() % 15};
        const upsilon::RationalFn f(F, Poly(c1), Poly({rng() % 16, 1}), 3, 2);
        for (const u64 ell : {1ULL, 3ULL, 5ULL, 15ULL})
            for (const auto& g : ctx->monic_divisors()) EXPECT_TRUE(sieve_identity_check(*ctx, f, ell, g.poly).holds);
    }
    EXPECT_THROW((void)sieve_identity_check(*ctx, upsilon::RationalFn::of(F, Poly({1, 1}), Poly::constant(1)), 7, Poly::constant(1)),
                 std::invalid_argument);
}

TEST(TheoremBoundTest, MatchesClosedForm) {
    const auto tb = theorem_bound(BigInt(1024), 3, 2, ntheory::factor_integer(u64{1}), ntheory::factor_integer(u64{1}), BigInt(1),
                                  BigInt(1), BigInt(1));
    EXPECT_NEAR(static_cast<double>(tb.lower_bound), 1024 - 6, 1e-9);
    EXPECT_TRUE(tb.sufficient);
    const auto tb2 = theorem_bound(BigInt(1024), 3, 2, ntheory::factor_integer(u64{1023}), ntheory::factor_integer(u64{1023}),
                                   BigInt(1), BigInt(1), BigInt(1));
    // W = 8 * 8, Q < (6 * 64)^2
    EXPECT_FALSE(tb2.sufficient);
    const double factor = (600.0 / 1023) * (600.0 / 1023);
    EXPECT_NEAR(static_cast<double>(tb2.lower_bound), factor * (1024 - 6 - 6 * 32 * 63), 1e-6);
}

TEST(Thresholds, GenericTableRows) {
    const std::vector<std::tuple<double, unsigned, double>> table{{6.3, 3, 3.74e9}, {6.3, 4, 3.91e7}, {6.4, 5, 2.5e6},
                                                                  {6.5, 6, 394155}, {6.7, 10, 9239}, {9, 158, 23}};
    for (const auto& [t, n, want] : table)
        EXPECT_NEAR(static_cast<double>(threshold_q(n, 3, 2, t, Regime::Generic)) / want, 1.0, 0.01) << n;
}

TEST(Thresholds, CubicWorstCaseBound) {
    ThresholdForm form;
    form.constant = 954;
    form.w = 1;
    form.a = 0;
    form.b = 0;
    EXPECT_LE(std::ceil(static_cast<double>(threshold_q(3, 3, 2, 3.7, Regime::Custom, form))), 22282.0);
}

TEST(Thresholds, DecreaseWithNAndRejectMismatchedRegimes) {
    double prev = 1e300;
    for (unsigned n = 3; n <= 30; ++n) {
        const double v = static_cast<double>(threshold_q(n, 3, 2, 7.0, Regime::Generic));
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_THROW((void)threshold_q(5, 3, 2, 8.0, Regime::LenstraQ2), std::invalid_argument);
    EXPECT_THROW((void)threshold_n(2, 3, 2, 8.0, Regime::Custom), std::invalid_argument);
    EXPECT_THROW((void)threshold_q(5, 3, 2, 3.0, Regime::Generic), std::domain_error);
}

TEST(Thresholds, DecreaseInTUpToTheTableValue) {
    // the minimum over t sits near each row's t, so monotonicity holds on (4, t0]
    for (const auto& [t0, n] : std::vector<std::pair<double, unsigned>>{{6.3, 3}, {6.3, 4}, {6.4, 5}, {6.5, 6}, {6.7, 10}}) {
        double prev = 1e300;
        for (double t = 4.0 + 4.0 / n + 0.05; t <= t0 + 1e-9; t += 0.05) {
            const double v = static_cast<double>(threshold_q(n, 3, 2, t, Regime::Generic));
            EXPECT_LE(v, prev * (1 + 1e-12)) << n << " t=" << t;
            prev = v;
        }
    }
}

TEST(Thresholds, ConditionOnNDecreasesInQ) {
    for (const double t : {5.0, 6.3, 8.0}) {
        const double q_lo = std::pow(2.0, 2 * t / (t - 4));
        double prev = 1e300;
        for (const u64 q : ntheory::prime_powers_in(static_cast<u64>(q_lo) + 1, 2000)) {
            const double v = static_cast<double>(threshold_n(q, 3, 2, t, Regime::Generic));
            EXPECT_LT(v, prev) << q;
            prev = v;
        }
    }
}

TEST(Sieve, EnlargingEllOrGNeverAddsSieveTerms) {
    for (const auto& [q, n] : std::vector<std::pair<u64, unsigned>>{{23, 22}, {13, 12}, {31, 5}, {9239, 6}, {16, 45}}) {
        const auto d = pair_data(q, n);
        unsigned prev_r = ~0u;
        for (const char* ell : {"gcd2", "gcd6", "gcd30", "gcd210", "full"}) {
            const auto rep = sieve_condition(d, 3, 2, EllSpec::parse(ell), GSpec::one());
            EXPECT_LE(rep.r, prev_r) << ell;
            prev_r = rep.r;
        }
        unsigned prev_s = ~0u;
        for (const char* g : {"1", "linear", "full"}) {
            const auto rep = sieve_condition(d, 3, 2, EllSpec::gcd(BigInt(210)), GSpec::parse(g));
            EXPECT_LE(rep.s, prev_s) << g;
            prev_s = rep.s;
        }
        EXPECT_EQ(sieve_condition(d, 3, 2, EllSpec::full(), GSpec::full()).r, 0u);
        EXPECT_EQ(sieve_condition(d, 3, 2, EllSpec::full(), GSpec::full()).s, 0u);
    }
}

TEST(Thresholds, SmallQRegimesGiveFiniteBounds) {
    for (const auto& [q, t, regime] : std::vector<std::tuple<u64, double, Regime>>{
             {2, 9.8, Regime::LenstraQ2}, {3, 8.8, Regime::LenstraQ3}, {4, 8, Regime::LenstraQ4}, {5, 7.8, Regime::LenstraQ5}, {7, 10.4, Regime::WqCap34}}) {
        const auto pp = ntheory::prime_power(q);
        const double n = static_cast<double>(threshold_n(q, 3, 2, t, regime, pp->prime));
        EXPECT_TRUE(std::isfinite(n)) << q;
        EXPECT_GT(n, 3.0) << q;
    }
}

TEST(WorstCase, PublishedSieveConstants) {
    const auto w3 = worst_case_sieve(BigInt("13988000000000000000"), ntheory::PrimeClass::CongruentOneMod3, 3, 10000);
    EXPECT_EQ(w3.r_max, 11u);
    EXPECT_GT(w3.delta_lower, BigRational(153, 1000));
    EXPECT_LT(w3.Delta_upper, 159);
    const auto w4 = worst_case_sieve(BigInt("2340000000000000000000000000000"), ntheory::PrimeClass::OddGreaterThan13, 4, 1000);
    EXPECT_EQ(w4.r_max, 18u);
    EXPECT_GT(w4.delta_lower, BigRational(99, 1000));
    EXPECT_LT(w4.Delta_upper, 396);
    EXPECT_LE(std::sqrt(6.0 * 64 * 64 * w4.Delta_upper.get_d()), 3120.0);
}

TEST(SmallFields, DecisionRules) {
    for (const unsigned n : {3u, 4u}) EXPECT_TRUE(decide_noBb(*freeness::FreenessContext::make(2, 1, n), 3, 2).fires);
    EXPECT_FALSE(decide_noBb(*freeness::FreenessContext::make(2, 1, 5), 3, 2).fires);
    for (const auto& [k, n] : std::vector<std::pair<unsigned, unsigned>>{{1, 5}, {1, 7}, {1, 11}, {3, 3}})
        EXPECT_TRUE(decide_yesBb(*freeness::FreenessContext::make(2, k, n), 3, 2).fires);
    EXPECT_FALSE(decide_yesBb(*freeness::FreenessContext::make(2, 1, 6), 3, 2).fires);
    EXPECT_THROW((void)decide_yesBb(*freeness::FreenessContext::make(3, 1, 3), 3, 2), std::invalid_argument);
    EXPECT_NO_THROW((void)decide_yesBb(*freeness::FreenessContext::make(3, 1, 3), 3, 2, true));
    EXPECT_THROW((void)decide_noBb(*freeness::FreenessContext::make(2, 1, 2), 3, 2), std::invalid_argument);
}

TEST(Classify, DefaultStrategyOnSmallPairs) {
    EXPECT_EQ(classify_pair(2, 3, 3, 2).status, Status::ProvedNotInB);
    EXPECT_EQ(classify_pair(2, 5, 3, 2).status, Status::ProvedInB);
    EXPECT_EQ(classify_pair(2, 6, 3, 2).status, Status::ProvedNotInB);
    EXPECT_EQ(classify_pair(3, 3, 3, 2).status, Status::ProvedNotInB);
    EXPECT_EQ(classify_pair(41, 3, 3, 2).status, Status::ProvedInB);
    EXPECT_EQ(classify_pair(2, 17, 3, 2).status, Status::ProvedInB);
}

TEST(Classify, IncompleteFactorizationIsIndeterminate) {
    ClassifyOptions o;
    o.budget = ntheory::Millis(0);
    // 2^251 - 1 has large prime factors that no zero budget can find
    const auto c = classify_pair(2, 251, 3, 2, parse_strategy("sieve:gcd210/1"), o);
    EXPECT_EQ(c.status, Status::Indeterminate);
}

TEST(Classify, CertificatesReplay) {
    for (const auto& [q, n] : std::vector<std::pair<u64, unsigned>>{{2, 5}, {2, 3}, {41, 3}, {23, 22}, {9239, 6}, {2, 6}}) {
        const auto c = classify_pair(q, n, 3, 2);
        ASSERT_TRUE(c.certificate.has_value()) << q << "," << n;
        EXPECT_TRUE(replay(c)) << q << "," << n;
    }
}

TEST(Classify, ScanIsDeterministicAcrossThreadCounts) {
    const auto a = scan(9000, 9400, 6, 8, 3, 2, parse_strategy("sieve:gcd210/1"), {}, 1);
    const auto b = scan(9000, 9400, 6, 8, 3, 2, parse_strategy("sieve:gcd210/1"), {}, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].q, b[i].q);
        EXPECT_EQ(a[i].n, b[i].n);
        EXPECT_EQ(a[i].status, b[i].status);
    }
    EXPECT_EQ(a.size(), 3 * ntheory::prime_powers_in(9000, 9400).size());
}

TEST(Rules, ParseAndPrintRoundTrip) {
    for (const std::string s : {"corollary", "nobb", "yesbb", "exhaustive", "sieve:full/1", "sieve:gcd210/linear", "sieve:6/smalldeg",
                                "sieve:210/[12,0,1]", "sieve:gcd30/full"})
        EXPECT_EQ(Rule::parse(s).to_string(), s);
    EXPECT_EQ(parse_strategy("corollary,sieve:210/[12,0,1],nobb").size(), 3u);
    EXPECT_THROW((void)Rule::parse("sieve:gcd210"), text::ParseError);
    EXPECT_THROW((void)Rule::parse("magic"), text::ParseError);
    EXPECT_THROW((void)parse_strategy(""), text::ParseError);
    EXPECT_THROW((void)parse_strategy("sieve:1/[1,2"), text::ParseError);
    EXPECT_EQ(parse_regime(to_string(Regime::WqCap34)), Regime::WqCap34);
    EXPECT_EQ(parse_status(to_string(Status::Indeterminate)), Status::Indeterminate);
}

}  // namespace
