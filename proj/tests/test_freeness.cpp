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
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "pnpair/freeness.hpp"

namespace {

using namespace pnpair;
using u64 = std::uint64_t;
using freeness::FreenessContext;
using ff::Poly;

const std::vector<std::tuple<u64, unsigned, unsigned>> kFields{{2, 1, 4}, {2, 1, 6}, {3, 1, 3}, {3, 1, 4}, {2, 2, 3},
                                                               {5, 1, 2}, {2, 3, 2}, {7, 1, 2}, {2, 1, 8}, {3, 2, 2}};

u64 mult_order(const ff::IndexedField& F, u64 a) {
    u64 x = a, o = 1;
    while (x != 1) {
        x = F.mul(x, a);
        ++o;
    }
    return o;
}

/// Rank over F_q of the conjugates beta, beta^q, ..., beta^(q^(n-1)), by elimination on F_q coordinates.
unsigned conjugate_rank(const FreenessContext& ctx, u64 beta) {
    const auto& F = ctx.field();
    const auto& B = ctx.base();
    const unsigned n = ctx.n();
    std::vector<std::vector<u64>> rows;
    u64 c = beta;
    for (unsigned i = 0; i < n; ++i) {
        rows.push_back(F.element(c).coords);
        c = F.pow(c, ctx.q());
    }
    unsigned rank = 0;
    for (unsigned col = 0; col < n && rank < n; ++col) {
        unsigned piv = rank;
        while (piv < n && rows[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(rows[piv], rows[rank]);
        const u64 inv = B.inv(rows[rank][col]);
        for (auto& x : rows[rank]) x = B.mul(x, inv);
        for (unsigned r = 0; r < n; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const u64 f = rows[r][col];
            for (unsigned j = 0; j < n; ++j) rows[r][j] = B.sub(rows[r][j], B.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

TEST(Freeness, PrimitivityMatchesMultiplicativeOrder) {
    for (const auto& [p, k, n] : kFields) {
        const auto ctx = FreenessContext::make(p, k, n);
        const auto& F = ctx->field();
        for (u64 a = 1; a < F.size(); ++a) {
            const bool prim = mult_order(F, a) == F.size() - 1;
            ASSERT_EQ(ctx->is_primitive(a), prim);
            ASSERT_EQ(ctx->is_primitive_fast(a), prim);
        }
        EXPECT_FALSE(ctx->is_primitive(0));
    }
}

TEST(Freeness, EFreeMatchesPowerDefinition) {
    // alpha is e-free iff it is not a d-th power for any d | e with d > 1
    for (const auto& [p, k, n] : kFields) {
        const auto ctx = FreenessContext::make(p, k, n);
        const auto& F = ctx->field();
        const u64 Qm1 = F.size() - 1;
        for (u64 e = 1; e <= Qm1; ++e) {
            if (Qm1 % e) continue;
            std::vector<char> is_power(F.size(), 0);
            for (u64 d = 2; d <= e; ++d) {
                if (e % d) continue;
                for (u64 b = 1; b < F.size(); ++b) is_power[F.pow(b, d)] = 1;
            }
            for (u64 a = 1; a < F.size(); ++a) ASSERT_EQ(ctx->is_e_free(a, e), !is_power[a]) << e << " " << a;
        }
        EXPECT_THROW((void)ctx->is_e_free(1, Qm1 + 1), std::invalid_argument);
    }
}

TEST(Freeness, NormalityMatchesConjugateRank) {
    for (const auto& [p, k, n] : kFields) {
        const auto ctx = FreenessContext::make(p, k, n);
        for (u64 b = 0; b < ctx->size(); ++b) ASSERT_EQ(ctx->is_normal(b), conjugate_rank(*ctx, b) == n) << b;
    }
}

TEST(Freeness, GFreeMatchesImageDefinition) {
    for (const auto& [p, k, n] : kFields) {
        const auto ctx = FreenessContext::make(p, k, n);
        ff::PolyRing<ff::BaseField> R(ctx->base());
        const auto divs = ctx->monic_divisors();
        for (const auto& g : divs) {
            std::vector<char> image(ctx->size(), 0);
            for (const auto& h : divs) {
                if (h.poly.degree() < 1 || !R.divides(h.poly, g.poly)) continue;
                for (u64 l = 0; l < ctx->size(); ++l) image[ctx->poly_action(h.poly, l)] = 1;
            }
            for (u64 b = 0; b < ctx->size(); ++b) {
                ASSERT_EQ(ctx->is_g_free(b, g.poly), !image[b]);
                ASSERT_EQ(ctx->is_g_free_definitional(b, g.poly), !image[b]);
            }
        }
    }
}

TEST(Freeness, AdditiveOrderIsTheMinimalAnnihilator) {
    for (const auto& [p, k, n] : kFields) {
        const auto ctx = FreenessContext::make(p, k, n);
        ff::PolyRing<ff::BaseField> R(ctx->base());
        const auto divs = ctx->monic_divisors();
        for (u64 b = 0; b < ctx->size(); ++b) {
            const Poly ord = ctx->additive_order(b);
            ASSERT_EQ(ctx->poly_action(ord, b), 0u);
            ASSERT_TRUE(R.divides(ord, ctx->xn1()));
            for (const auto& h : divs)
                if (ctx->poly_action(h.poly, b) == 0) {
                    ASSERT_TRUE(R.divides(ord, h.poly));
                }
            ASSERT_EQ(ctx->is_normal(b), ord == ctx->xn1());
        }
    }
}

TEST(Freeness, DivisorInvariantsMatchBruteForce) {
    for (const auto& [p, k, n] : kFields) {
        const auto ctx = FreenessContext::make(p, k, n);
        ff::PolyRing<ff::BaseField> R(ctx->base());
        const u64 q = ctx->q();
        for (const auto& g : ctx->monic_divisors()) {
            // Phi(g): residues modulo g coprime to g
            u64 total = 1, units = 0;
            for (int i = 0; i < g.poly.degree(); ++i) total *= q;
            for (u64 idx = 0; idx < total; ++idx) {
                const Poly r = ff::poly_from_index(ctx->base(), idx);
                if (g.poly.degree() == 0 || (!r.is_zero() && R.gcd(r, g.poly).degree() == 0)) ++units;
            }
            EXPECT_EQ(ctx->Phi(g), from_u64(units));
            EXPECT_EQ(ctx->Norm(g), from_u64(total));
            EXPECT_EQ(ctx->Wq(g), big_pow(BigInt(2), ctx->support(g).size()));
        }
    }
}

TEST(Freeness, PrimitiveNormalCountsMatchBruteForceAndThreads) {
    for (const auto& [p, k, n] : kFields) {
        const auto ctx = FreenessContext::make(p, k, n);
        const auto& F = ctx->field();
        u64 brute = 0;
        for (u64 a = 1; a < F.size(); ++a)
            if (mult_order(F, a) == F.size() - 1 && conjugate_rank(*ctx, a) == n) ++brute;
        EXPECT_EQ(freeness::count_primitive_normal(*ctx, 1), brute);
        EXPECT_EQ(freeness::count_primitive_normal(*ctx, 4), brute);
        EXPECT_GT(brute, 0u);  // primitive normal elements always exist
    }
}

TEST(Freeness, PublishedCountsForSmallFields) {
    EXPECT_EQ(freeness::count_primitive_normal(*FreenessContext::make(2, 1, 3)), 3u);
    EXPECT_EQ(freeness::count_primitive_normal(*FreenessContext::make(2, 1, 4)), 4u);
    EXPECT_EQ(freeness::count_primitive_normal(*FreenessContext::make(2, 1, 5)), 15u);
    EXPECT_EQ(freeness::count_primitive_normal(*FreenessContext::make(2, 1, 7)), 49u);
    EXPECT_EQ(freeness::count_primitive_normal(*FreenessContext::make(2, 1, 11)), 957u);
    EXPECT_EQ(freeness::count_primitive_normal(*FreenessContext::make(2, 3, 3)), 378u);
}

}  // namespace
