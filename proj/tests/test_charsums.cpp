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

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pnpair/charsums.hpp"
#include "pnpair/search.hpp"

namespace {

using namespace pnpair;
using u64 = std::uint64_t;
using namespace pnpair::charsums;
using ff::Poly;
using freeness::FreenessContext;

constexpr double kTol = 1e-9;

/// Absolute trace to F_p by summing the p-power conjugates.
u64 oracle_trace(const ff::IndexedField& F, u64 x) {
    u64 t = 0, c = x;
    const u64 deg = static_cast<u64>(F.k()) * F.n();
    for (u64 i = 0; i < deg; ++i) {
        t = F.add(t, c);
        c = F.pow(c, F.p());
    }
    return t;
}

std::shared_ptr<const FreenessContext> make(u64 p, unsigned k, unsigned n) { return FreenessContext::make(p, k, n); }

TEST(Characters, MultiplicativeCharactersAreHomomorphismsWithOrthogonality) {
    const auto ctx = make(3, 1, 3);
    CharacterContext cc(ctx);
    const auto& F = ctx->field();
    for (u64 j = 0; j < F.size() - 1; ++j) {
        const MultCharacter x{j};
        std::complex<double> sum = 0;
        for (u64 a = 1; a < F.size(); ++a) {
            sum += cc.chi(x, a);
            for (u64 b = 1; b < F.size(); b += 5) ASSERT_LT(std::abs(cc.chi(x, F.mul(a, b)) - cc.chi(x, a) * cc.chi(x, b)), kTol);
        }
        EXPECT_LT(std::abs(sum - std::complex<double>(j == 0 ? F.size() - 1.0 : 0.0, 0)), 1e-9) << j;
        EXPECT_EQ(cc.chi(x, 0), std::complex<double>(0, 0));
    }
    for (const u64 d : {1ULL, 2ULL, 13ULL, 26ULL}) {
        const auto xs = cc.characters_of_order(d);
        EXPECT_EQ(xs.size(), to_u64(ntheory::euler_phi(ntheory::factor_integer(d))));
        for (const auto& x : xs) EXPECT_EQ(cc.order(x), d);
    }
    EXPECT_THROW((void)cc.characters_of_order(5), std::invalid_argument);
}

TEST(Characters, AdditiveCharactersUseTheAbsoluteTrace) {
    const auto ctx = make(2, 2, 3);
    CharacterContext cc(ctx);
    const auto& F = ctx->field();
    const double two_pi = 2 * std::acos(-1.0);
    for (u64 c = 0; c < F.size(); ++c) {
        std::complex<double> sum = 0;
        for (u64 b = 0; b < F.size(); ++b) {
            const auto want = std::polar(1.0, two_pi * static_cast<double>(oracle_trace(F, F.mul(c, b))) / F.p());
            ASSERT_LT(std::abs(cc.psi({c}, b) - want), kTol);
            sum += cc.psi({c}, b);
        }
        EXPECT_LT(std::abs(sum - std::complex<double>(c == 0 ? F.size() : 0.0, 0)), 1e-9);
    }
}

TEST(Characters, FqOrdersPartitionCharactersByPhi) {
    for (const auto& [p, k, n] : std::vector<std::tuple<u64, unsigned, unsigned>>{{2, 1, 4}, {3, 1, 3}, {2, 1, 6}, {2, 2, 2}}) {
        const auto ctx = make(p, k, n);
        CharacterContext cc(ctx);
        const auto& F = ctx->field();
        ff::PolyRing<ff::BaseField> R(ctx->base());
        u64 total = 0;
        for (const auto& h : cc.xn_divisors()) {
            const auto chars = cc.characters_of_order(h);
            EXPECT_EQ(from_u64(chars.size()), ctx->Phi(h));
            total += chars.size();
            for (const auto& a : chars) {
                // psi o h' is trivial exactly when h divides h'
                for (const auto& h2 : cc.xn_divisors()) {
                    bool trivial = true;
                    for (u64 b = 0; b < F.size() && trivial; ++b)
                        if (oracle_trace(F, F.mul(a.c, ctx->poly_action(h2.poly, b))) != 0) trivial = false;
                    ASSERT_EQ(trivial, R.divides(h.poly, h2.poly));
                }
            }
        }
        EXPECT_EQ(total, F.size());
    }
}

TEST(Indicators, RhoAndKappaAgreeWithPredicatesOnF32) {
    const auto ctx = make(2, 1, 5);
    CharacterContext cc(ctx);
    for (const u64 s : {1ULL, 31ULL}) {
        for (u64 a = 1; a < ctx->size(); ++a) {
            const auto ind = cc.rho(a, s);
            EXPECT_EQ(ind.indicator, ctx->is_e_free(a, s) ? 1 : 0);
            EXPECT_LT(ind.deviation, kIndicatorTolerance);
        }
    }
    for (const auto& g : cc.xn_divisors())
        for (u64 b = 0; b < ctx->size(); ++b) EXPECT_EQ(cc.kappa(b, g).indicator, ctx->is_g_free(b, g.poly) ? 1 : 0);
    EXPECT_THROW((void)cc.rho_value(0, 31), std::domain_error);
}

TEST(Indicators, RoundingRejectsNonIndicatorValues) {
    EXPECT_THROW((void)round_indicator({0.5, 0}), NumericError);
    EXPECT_THROW((void)round_indicator({1, 1e-3}), NumericError);
    EXPECT_EQ(round_indicator({1 - 1e-9, 1e-10}).indicator, 1);
    EXPECT_EQ(round_indicator({1e-9, 0}).indicator, 0);
}

TEST(Expansion, CharacterSumEqualsDirectCount) {
    const auto ctx = make(2, 1, 4);
    CharacterContext cc(ctx);
    const auto& F = ctx->field();
    std::mt19937_64 rng(13);
    const std::vector<u64> es{1, 3, 5, 15};
    for (int i = 0; i < 15; ++i) {
        std::vector<u64> c1(1 + rng() % 4), c2(1 + rng() % 3);
        for (auto& x : c1) x = rng() % F.size();
        for (auto& x : c2) x = rng() % F.size();
        c1.back() = c1.back() ? c1.back() : 1;
        c2.back() = 1;
        const upsilon::RationalFn f(F, Poly(c1), Poly(c2), 3, 2);
        const u64 e1 = es[rng() % es.size()], e2 = es[rng() % es.size()];
        const auto& g = cc.xn_divisors()[rng() % cc.xn_divisors().size()];
        const double chars = cc.n_f_by_characters(f, e1, e2, g);
        const auto direct = search::count_nf_direct(*ctx, f, e1, e2, g.poly, 0, 1).n_f;
        EXPECT_NEAR(chars, static_cast<double>(direct), 1e-4);
    }
}

TEST(Weil, JacobiSumsMeetTheBoundWithEquality) {
    // chi(x^a (x-1)^b) with chi^a, chi^b, chi^(a+b) nontrivial has absolute sum sqrt(Q)
    const auto ctx = make(2, 1, 5);
    CharacterContext cc(ctx);
    PowerProduct v;
    v.terms = {{Poly({0, 1}), 1}, {Poly({1, 1}), 2}};
    const auto r = cc.weil_check(v, std::nullopt, {1}, {0});
    EXPECT_EQ(r.hypothesis, HypothesisStatus::Verified);
    EXPECT_NEAR(r.lhs, std::sqrt(32.0), 1e-9);
    EXPECT_NEAR(r.rhs, std::sqrt(32.0), 1e-9);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.data.D1, 2u);
}

TEST(Weil, HypothesisIsCheckedExactly) {
    const auto ctx = make(3, 1, 2);
    CharacterContext cc(ctx);
    const auto& F = ctx->field();
    // (x+1)^8 is an 8th power, so chi of order 8 sees a constant
    PowerProduct v;
    v.terms = {{Poly({1, 1}), 8}};
    EXPECT_EQ(cc.weil_check(v, std::nullopt, {1}, {0}).hypothesis, HypothesisStatus::Violated);
    // with chi of order 4 the exponent 2 is not a multiple of the order
    v.terms = {{Poly({1, 1}), 2}};
    EXPECT_EQ(cc.weil_check(v, std::nullopt, {2}, {0}).hypothesis, HypothesisStatus::Verified);
    // constant u is of the form r^Q - r
    const auto constant = upsilon::RationalFn::of(F, Poly::constant(1), Poly::constant(1));
    EXPECT_EQ(cc.weil_check(v, constant, {2}, {1}).hypothesis, HypothesisStatus::Violated);
    // u = 1/x has a simple pole, which r^Q - r cannot have
    const auto inv = upsilon::RationalFn::of(F, Poly::constant(1), Poly({0, 1}));
    const auto r = cc.weil_check(v, inv, {2}, {1});
    EXPECT_EQ(r.hypothesis, HypothesisStatus::Verified);
    EXPECT_TRUE(r.hybrid);
    EXPECT_TRUE(r.holds);
}

TEST(Weil, PoleOrdersDivisibleByQAreLeftUnchecked) {
    const auto ctx = make(2, 1, 2);
    CharacterContext cc(ctx);
    const auto& F = ctx->field();
    ff::PolyRing<ff::IndexedField> R(F);
    // u = x^4 + x = x^Q - x has its only pole at infinity, of order Q
    const auto u = upsilon::RationalFn::of(F, Poly({0, 1, 0, 0, 1}), Poly::constant(1));
    PowerProduct v;
    v.terms = {{Poly({1, 1}), 1}};
    EXPECT_EQ(cc.weil_check(v, u, {1}, {1}).hypothesis, HypothesisStatus::Unchecked);
}

TEST(Weil, LibraryGeneratorProducesVerifiedInstancesThatHold) {
    std::mt19937_64 rng(17);
    for (const auto& [p, n] : std::vector<std::pair<u64, unsigned>>{{2, 5}, {3, 3}, {5, 2}, {2, 8}}) {
        const auto ctx = make(p, 1, n);
        CharacterContext cc(ctx);
        for (int i = 0; i < 60; ++i) {
            const auto w = random_weil_instance(cc, rng);
            const auto r = cc.weil_check(w.v, w.u, w.chi, w.psi);
            EXPECT_EQ(r.hypothesis, HypothesisStatus::Verified);
            EXPECT_TRUE(r.holds) << r.lhs << " > " << r.rhs;
        }
    }
}

TEST(Weil, ZeroFactorIsRejected) {
    const auto ctx = make(2, 1, 3);
    CharacterContext cc(ctx);
    PowerProduct v;
    v.terms = {{Poly(), 1}};
    EXPECT_THROW((void)cc.weil_check(v, std::nullopt, {1}, {0}), std::invalid_argument);
}

}  // namespace
