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

#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "pnpair/search.hpp"
#include "pnpair/text.hpp"

namespace {

using namespace pnpair;
using u64 = std::uint64_t;
using ff::Poly;
using freeness::FreenessContext;
using upsilon::RationalFn;

/// Irreducible factors of a polynomial of degree <= 3 over F: peel roots, the rest has degree <= 3 and no root.
std::vector<std::pair<Poly, unsigned>> small_factor(const ff::IndexedField& F, Poly f) {
    ff::PolyRing<ff::IndexedField> R(F);
    std::vector<std::pair<Poly, unsigned>> out;
    if (f.degree() < 1) return out;
    f = R.monic(f);
    for (u64 r = 0; r < F.size(); ++r) {
        const Poly lin({F.neg(r), 1});
        unsigned m = 0;
        while (f.degree() >= 1 && R.divides(lin, f)) {
            f = R.div_exact(f, lin);
            ++m;
        }
        if (m) out.push_back({lin, m});
    }
    if (f.degree() >= 1) out.push_back({f, 1});
    return out;
}

bool oracle_member(const ff::IndexedField& F, const RationalFn& f) {
    const u64 Qm1 = F.size() - 1;
    for (const Poly& part : {f.f1(), f.f2()})
        for (const auto& [P, m] : small_factor(F, part))
            if (P != Poly::x() && std::gcd(static_cast<u64>(m), Qm1) == 1) return true;
    return false;
}

Poly random_poly(const ff::IndexedField& F, std::mt19937_64& rng, int max_deg, bool monic) {
    const int d = static_cast<int>(rng() % (max_deg + 1));
    std::vector<u64> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = rng() % F.size();
    if (monic || c.back() == 0) c.back() = 1;
    return Poly(std::move(c));
}

TEST(Upsilon, MembershipMatchesFactorOracle) {
    for (const auto& [p, k] : std::vector<std::pair<u64, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {5, 1}, {7, 1}, {2, 4}}) {
        const auto F = ff::make_indexed(p, k, 1);
        std::mt19937_64 rng(p * 10 + k);
        for (int i = 0; i < 400; ++i) {
            const RationalFn f(*F, random_poly(*F, rng, 3, false), random_poly(*F, rng, 2, true), 3, 2);
            ASSERT_EQ(upsilon::in_upsilon(*F, f).member, oracle_member(*F, f))
                << text::format_rational(f.f1(), f.f2()) << " over F_" << F->size();
        }
    }
}

TEST(Upsilon, KnownMembersAndNonMembers) {
    const auto F4 = ff::make_indexed(2, 2, 1);
    const auto of = [&](Poly a, Poly b) { return RationalFn::of(*F4, a, b); };
    EXPECT_FALSE(upsilon::in_upsilon(*F4, of(Poly({0, 0, 1}), Poly::constant(1))).member);  // x^2
    EXPECT_TRUE(upsilon::in_upsilon(*F4, of(Poly({1, 0, 1}), Poly::constant(1))).member);   // (x+1)^2, 2 coprime to 3
    EXPECT_FALSE(upsilon::in_upsilon(*F4, of(Poly::constant(2), Poly::constant(1))).member);
    EXPECT_FALSE(upsilon::in_upsilon(*F4, of(Poly({0, 1}), Poly({0, 0, 1}))).member);  // 1/x
    // (x+1)^3 over F_4: multiplicity 3 divides q - 1
    ff::PolyRing<ff::IndexedField> R(*F4);
    EXPECT_FALSE(upsilon::in_upsilon(*F4, of(R.pow(Poly({1, 1}), 3), Poly::constant(1))).member);
    const auto m = upsilon::in_upsilon(*F4, of(Poly({1, 1}), Poly::constant(1)));
    ASSERT_TRUE(m.witness.has_value());
    EXPECT_EQ(m.witness->poly, Poly({1, 1}));
}

TEST(Upsilon, RationalFunctionsAreReduced) {
    const auto F = ff::make_indexed(3, 1, 1);
    ff::PolyRing<ff::IndexedField> R(*F);
    const Poly a({1, 1}), b({2, 1}), c({1, 0, 1});
    const RationalFn f(*F, R.mul(a, c), R.mul(b, c), 3, 2);
    EXPECT_EQ(f.f1(), a);
    EXPECT_EQ(f.f2(), b);
    EXPECT_THROW(RationalFn(*F, a, Poly(), 3, 2), std::invalid_argument);
}

TEST(Upsilon, EnumerationMatchesBruteForceOverF4) {
    const auto F = ff::make_indexed(2, 2, 1);
    ff::PolyRing<ff::IndexedField> R(*F);
    std::set<std::pair<std::vector<u64>, std::vector<u64>>> brute, listed;
    // f1 of degree <= 2 nonzero, f2 monic of degree <= 1, coprime
    for (u64 i = 1; i < 64; ++i) {
        const Poly f1 = ff::poly_from_index(*F, i);
        for (u64 j = 0; j < 5; ++j) {
            const Poly f2 = j == 0 ? Poly::constant(1) : Poly({j - 1, 1});
            if (R.gcd(f1, f2).degree() > 0) continue;
            const RationalFn f(*F, f1, f2, 2, 1);
            if (oracle_member(*F, f)) brute.insert({f.f1().c, f.f2().c});
        }
    }
    upsilon::enumerate_upsilon(F, 2, 1, BigInt(100000), [&](const RationalFn& f) {
        listed.insert({f.f1().c, f.f2().c});
        return true;
    });
    EXPECT_EQ(listed, brute);
    unsigned linear = 0;
    upsilon::enumerate_upsilon(F, 1, 0, BigInt(1000), [&](const RationalFn&) {
        ++linear;
        return true;
    });
    EXPECT_EQ(linear, 9u);  // a x + b with a, b nonzero
}

TEST(Upsilon, CapRefusesOversizedEnumeration) {
    const auto F = ff::make_indexed(2, 1, 8);
    EXPECT_THROW(upsilon::enumerate_upsilon(F, 3, 2, BigInt(1000), [](const RationalFn&) { return true; }), ff::CapExceeded);
}

TEST(Upsilon, ExceptionalSetIsPolesAndZeros) {
    const auto F = ff::make_indexed(2, 1, 4);
    ff::PolyRing<ff::IndexedField> R(*F);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const RationalFn f(*F, random_poly(*F, rng, 3, false), random_poly(*F, rng, 2, true), 3, 2);
        std::vector<u64> want;
        for (u64 a = 0; a < F->size(); ++a)
            if (a == 0 || R.eval(f.f1(), a) == 0 || R.eval(f.f2(), a) == 0) want.push_back(a);
        EXPECT_EQ(upsilon::exceptional_set(*F, f), want);
        for (u64 a = 1; a < F->size(); ++a) {
            const auto v = upsilon::evaluate(*F, f, a);
            EXPECT_EQ(v.has_value(), R.eval(f.f2(), a) != 0);
            if (v) {
                EXPECT_EQ(F->mul(*v, R.eval(f.f2(), a)), R.eval(f.f1(), a));
            }
        }
    }
}

TEST(Search, DirectCountMatchesBruteForce) {
    const auto ctx = FreenessContext::make(2, 1, 6);
    const auto& F = ctx->field();
    ff::PolyRing<ff::IndexedField> R(F);
    std::mt19937_64 rng(11);
    const std::vector<u64> es{1, 3, 7, 9, 21, 63};
    for (int i = 0; i < 40; ++i) {
        const RationalFn f(F, random_poly(F, rng, 3, false), random_poly(F, rng, 2, true), 3, 2);
        const u64 e1 = es[rng() % es.size()], e2 = es[rng() % es.size()];
        const auto divs = ctx->monic_divisors();
        const Poly g = divs[rng() % divs.size()].poly;
        u64 want = 0;
        for (u64 a = 1; a < F.size(); ++a) {
            const auto v = upsilon::evaluate(F, f, a);
            if (v && *v != 0 && ctx->is_e_free(a, e1) && ctx->is_e_free(*v, e2) && ctx->is_g_free_definitional(a, g)) ++want;
        }
        const auto got = search::count_nf_direct(*ctx, f, e1, e2, g, 4, 2);
        EXPECT_EQ(got.n_f, want);
        EXPECT_LE(got.witnesses.size(), std::min<u64>(4, want));
        for (const u64 a : got.witnesses) EXPECT_TRUE(ctx->is_e_free(a, e1) && ctx->is_g_free(a, g));
    }
}

TEST(Search, PublishedCounterexamplesAreConfirmed) {
    const auto c26 = FreenessContext::make(2, 1, 6);
    EXPECT_TRUE(search::verify_counterexample(*c26, RationalFn::of(c26->field(), Poly({1, 1, 1}), Poly::constant(1))).confirmed);
    const auto c33 = FreenessContext::make(3, 1, 3);
    EXPECT_TRUE(search::verify_counterexample(*c33, RationalFn::of(c33->field(), Poly({2, 1, 1}), Poly::constant(1))).confirmed);
    // x + 1 over F_32 has a primitive normal alpha with alpha + 1 primitive
    const auto c25 = FreenessContext::make(2, 1, 5);
    const auto r = search::verify_counterexample(*c25, RationalFn::of(c25->field(), Poly({1, 1}), Poly::constant(1)));
    EXPECT_FALSE(r.confirmed);
    EXPECT_FALSE(r.surviving_alphas.empty());
    EXPECT_EQ(r.pn_count, 15u);
}

TEST(Search, ExhaustiveVerdictsOnTinyFields) {
    const auto run = [](u64 p, unsigned k, unsigned n, search::Engine e) {
        search::ExhaustiveOptions o;
        o.engine = e;
        return search::exhaustive_search(*FreenessContext::make(p, k, n), 3, 2, o);
    };
    EXPECT_EQ(run(2, 1, 3, search::Engine::Auto).verdict, search::Verdict::NotInB);
    EXPECT_EQ(run(2, 1, 4, search::Engine::Auto).verdict, search::Verdict::NotInB);
    EXPECT_EQ(run(2, 1, 5, search::Engine::Auto).verdict, search::Verdict::InB);
    EXPECT_EQ(run(3, 1, 3, search::Engine::Auto).verdict, search::Verdict::NotInB);
    // both engines agree where both are cheap
    for (const auto& [p, n] : std::vector<std::pair<u64, unsigned>>{{2, 3}, {2, 4}, {3, 3}}) {
        const auto a = run(p, 1, n, search::Engine::Interpolate);
        const auto b = run(p, 1, n, search::Engine::Enumerate);
        EXPECT_EQ(a.verdict, b.verdict) << p << "," << n;
        EXPECT_NE(a.verdict, search::Verdict::Unresolved) << p << "," << n;
    }
}

TEST(Search, ReportedFailingFunctionsAreGenuine) {
    const auto ctx = FreenessContext::make(2, 1, 6);
    search::ExhaustiveOptions o;
    const auto r = search::exhaustive_search(*ctx, 3, 2, o);
    ASSERT_EQ(r.verdict, search::Verdict::NotInB);
    ASSERT_FALSE(r.failing.empty());
    for (const auto& w : r.failing) {
        const RationalFn f(ctx->field(), w.f1, w.f2, 3, 2);
        EXPECT_TRUE(upsilon::in_upsilon(ctx->field(), f).member);
        EXPECT_TRUE(search::verify_counterexample(*ctx, f).confirmed);
    }
}

TEST(Search, BudgetExhaustionIsUnresolvedNotAVerdict) {
    search::ExhaustiveOptions o;
    o.cap = 10;
    o.engine = search::Engine::Enumerate;
    const auto r = search::exhaustive_search(*FreenessContext::make(2, 1, 7), 3, 2, o);
    EXPECT_EQ(r.verdict, search::Verdict::Unresolved);
    EXPECT_FALSE(r.complete);
}

}  // namespace
