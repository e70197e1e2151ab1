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

#ifndef PNPAIR_FREENESS_HPP
#define PNPAIR_FREENESS_HPP

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pnpair/ffpoly/factor_poly.hpp"
#include "pnpair/ffpoly/indexed_field.hpp"
#include "pnpair/ffpoly/xn1.hpp"
#include "pnpair/ntheory/arith.hpp"

namespace pnpair::freeness {

using ff::Poly;
using ff::u64;

/// A monic divisor of x^n - 1, as exponents against the distinct irreducible factors.
struct XnDivisor {
    std::vector<unsigned> exps;
    Poly poly;
};

inline unsigned default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Sums fn(lo, hi) over contiguous blocks of [begin, end) run on worker threads.
template <class T, class Fn>
T parallel_sum(u64 begin, u64 end, unsigned threads, Fn&& fn) {
    if (end <= begin) return T{};
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<u64>(end - begin, 256))));
    if (threads == 1) return fn(begin, end);
    std::vector<T> partial(threads);
    std::vector<std::thread> pool;
    const u64 span = (end - begin + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const u64 lo = begin + span * t, hi = std::min(end, lo + span);
        pool.emplace_back([&, t, lo, hi] {
            if (lo < hi) partial[t] = fn(lo, hi);
        });
    }
    for (auto& th : pool) th.join();
    T total{};
    for (auto& v : partial) total += v;
    return total;
}

/// F_{q^n} with q^n - 1 and x^n - 1 factored.
class FreenessContext {
public:
    explicit FreenessContext(ff::IndexedFieldPtr field) : field_(std::move(field)) {
        const auto& T = field_->tower();
        order_ = T.factored_order();
        order_.require_complete();
        for (const auto& pp : order_.factors()) order_primes_.push_back(to_u64(pp.prime));
        xn1_poly_ = ff::xn_minus_1(T.base(), field_->n());
        xn1_ = ff::factor_poly(T.base(), xn1_poly_);
        ff::PolyRing<ff::BaseField> R(T.base());
        for (const auto& f : xn1_.factors) cofactors_.push_back(R.div_exact(xn1_poly_, f.poly));
    }

    static std::shared_ptr<const FreenessContext> make(u64 p, unsigned k, unsigned n) {
        return std::make_shared<const FreenessContext>(ff::make_indexed(p, k, n));
    }

    const ff::IndexedField& field() const { return *field_; }
    const ff::IndexedFieldPtr& field_ptr() const { return field_; }
    const ff::BaseField& base() const { return field_->base(); }
    u64 q() const { return field_->q(); }
    unsigned n() const { return field_->n(); }
    /// q^n
    u64 size() const { return field_->size(); }
    const ntheory::FactoredInteger& factored_order() const { return order_; }
    const ff::FactoredPoly& factored_xn1() const { return xn1_; }
    const Poly& xn1() const { return xn1_poly_; }

    /// a^e by square-and-multiply on field multiplication.
    u64 pow_sqm(u64 a, u64 e) const {
        u64 r = 1;
        while (e > 0) {
            if (e & 1) r = field_->mul(r, a);
            a = field_->mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool is_e_free(u64 alpha, const ntheory::FactoredInteger& e) const {
        if (alpha == 0) throw std::domain_error("is_e_free: alpha = 0");
        e.require_complete();
        const u64 qm1 = size() - 1;
        if (e.value() < 1 || (from_u64(qm1) % e.value()) != 0)
            throw std::invalid_argument("is_e_free: e does not divide q^n - 1");
        for (const auto& pp : e.factors())
            if (pow_sqm(alpha, qm1 / to_u64(pp.prime)) == 1) return false;
        return true;
    }

    bool is_e_free(u64 alpha, u64 e) const { return is_e_free(alpha, order_.divisor(from_u64(e))); }

    bool is_primitive(u64 alpha) const { return alpha != 0 && is_e_free(alpha, order_); }

    /// Fast primitivity through the discrete log: gcd(log alpha, q^n - 1) = 1.
    bool is_primitive_fast(u64 alpha) const {
        if (alpha == 0) return false;
        const u64 m = field_->log(alpha);
        for (const u64 r : order_primes_)
            if (m % r == 0) return false;
        return true;
    }

    /// beta^(q^i) for i = 0..n-1.
    std::vector<u64> conjugates(u64 beta) const {
        std::vector<u64> c(n());
        c[0] = beta;
        for (unsigned i = 1; i < n(); ++i) c[i] = field_->frobenius_q(c[i - 1], 1);
        return c;
    }

    /// h o beta given the conjugates of beta; h reduced mod x^n - 1 implicitly.
    u64 action(const Poly& h, const std::vector<u64>& conj) const {
        u64 acc = 0;
        for (std::size_t i = 0; i < h.c.size(); ++i)
            if (h.c[i] != 0) acc = field_->add(acc, field_->mul(h.c[i], conj[i % n()]));
        return acc;
    }

    u64 poly_action(const Poly& h, u64 beta) const { return action(h, conjugates(beta)); }

    /// Position of each distinct irreducible of g in the factorization of x^n - 1.
    std::vector<std::size_t> irreducibles_of(const Poly& g) const {
        ff::PolyRing<ff::BaseField> R(base());
        if (g.is_zero() || g.lead() != 1) throw std::invalid_argument("g must be monic");
        if (!R.divides(g, xn1_poly_)) throw std::invalid_argument("g does not divide x^n - 1");
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < xn1_.factors.size(); ++i)
            if (R.divides(xn1_.factors[i].poly, g)) idx.push_back(i);
        return idx;
    }

    bool is_g_free(u64 beta, const Poly& g) const { return is_g_free_idx(beta, irreducibles_of(g)); }

    bool is_g_free_idx(u64 beta, const std::vector<std::size_t>& irr) const {
        if (irr.empty()) return true;
        const auto conj = conjugates(beta);
        for (const auto i : irr)
            if (action(cofactors_[i], conj) == 0) return false;
        return true;
    }

    bool is_normal(u64 beta) const {
        const auto conj = conjugates(beta);
        for (const auto& c : cofactors_)
            if (action(c, conj) == 0) return false;
        return true;
    }

    /// Definitional check: beta is not h o lambda for any irreducible h | g and any lambda.
    bool is_g_free_definitional(u64 beta, const Poly& g) const {
        for (const auto i : irreducibles_of(g)) {
            const Poly& P = xn1_.factors[i].poly;
            for (u64 lambda = 0; lambda < size(); ++lambda)
                if (poly_action(P, lambda) == beta) return false;
        }
        return true;
    }

    /// Ord[beta]: the monic generator of the annihilator of beta.
    Poly additive_order(u64 beta) const {
        ff::PolyRing<ff::BaseField> R(base());
        Poly h = xn1_poly_;
        const auto conj = conjugates(beta);
        for (const auto& f : xn1_.factors) {
            for (unsigned e = 0; e < f.multiplicity; ++e) {
                auto [quot, rem] = R.divmod(h, f.poly);
                if (!rem.is_zero() || action(quot, conj) != 0) break;
                h = std::move(quot);
            }
        }
        return h;
    }

    /// Every monic divisor of x^n - 1, exponent vectors in lexicographic order.
    std::vector<XnDivisor> monic_divisors() const {
        ff::PolyRing<ff::BaseField> R(base());
        std::vector<XnDivisor> out{{std::vector<unsigned>(xn1_.factors.size(), 0), Poly::constant(1)}};
        for (std::size_t i = 0; i < xn1_.factors.size(); ++i) {
            std::vector<XnDivisor> next;
            for (const auto& d : out) {
                Poly cur = d.poly;
                for (unsigned e = 0; e <= xn1_.factors[i].multiplicity; ++e) {
                    XnDivisor nd{d.exps, cur};
                    nd.exps[i] = e;
                    next.push_back(std::move(nd));
                    cur = R.mul(cur, xn1_.factors[i].poly);
                }
            }
            out = std::move(next);
        }
        return out;
    }

    XnDivisor divisor_of(const Poly& g) const {
        ff::PolyRing<ff::BaseField> R(base());
        if (!R.divides(g, xn1_poly_)) throw std::invalid_argument("g does not divide x^n - 1");
        XnDivisor d{std::vector<unsigned>(xn1_.factors.size(), 0), R.monic(g)};
        Poly rest = d.poly;
        for (std::size_t i = 0; i < xn1_.factors.size(); ++i) {
            while (true) {
                auto [quot, rem] = R.divmod(rest, xn1_.factors[i].poly);
                if (!rem.is_zero()) break;
                rest = std::move(quot);
                ++d.exps[i];
            }
        }
        return d;
    }

    /// Number of distinct irreducible factors of g, so W_q(g) = 2^count.
    unsigned omega(const XnDivisor& g) const {
        return static_cast<unsigned>(std::count_if(g.exps.begin(), g.exps.end(), [](unsigned e) { return e > 0; }));
    }
    BigInt Wq(const XnDivisor& g) const { return big_pow(BigInt(2), omega(g)); }
    /// Phi(g) = |(F_q[x]/g)^*|
    BigInt Phi(const XnDivisor& g) const {
        BigInt r = 1;
        const BigInt qq = from_u64(q());
        for (std::size_t i = 0; i < g.exps.size(); ++i) {
            if (g.exps[i] == 0) continue;
            const auto d = static_cast<unsigned long>(xn1_.factors[i].poly.degree());
            r *= (big_pow(qq, d) - 1) * big_pow(qq, d * (g.exps[i] - 1));
        }
        return r;
    }
    /// N(g) = q^deg g
    BigInt Norm(const XnDivisor& g) const { return big_pow(from_u64(q()), static_cast<unsigned long>(g.poly.degree())); }
    /// Moebius function on F_q[x].
    int mu(const XnDivisor& g) const {
        for (auto e : g.exps)
            if (e > 1) return 0;
        return omega(g) % 2 == 0 ? 1 : -1;
    }

    std::vector<std::size_t> support(const XnDivisor& g) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < g.exps.size(); ++i)
            if (g.exps[i] > 0) idx.push_back(i);
        return idx;
    }

private:
    ff::IndexedFieldPtr field_;
    ntheory::FactoredInteger order_;
    std::vector<u64> order_primes_;
    Poly xn1_poly_;
    ff::FactoredPoly xn1_;
    std::vector<Poly> cofactors_;
};

using ContextPtr = std::shared_ptr<const FreenessContext>;

/// The number of elements of F_{q^n} that are primitive and normal over F_q.
inline u64 count_primitive_normal(const FreenessContext& ctx, unsigned threads = default_threads()) {
    return parallel_sum<u64>(1, ctx.size(), threads, [&](u64 lo, u64 hi) {
        u64 c = 0;
        for (u64 a = lo; a < hi; ++a)
            if (ctx.is_primitive_fast(a) && ctx.is_normal(a)) ++c;
        return c;
    });
}

inline u64 count_normal(const FreenessContext& ctx) {
    u64 c = 0;
    for (u64 a = 0; a < ctx.size(); ++a)
        if (ctx.is_normal(a)) ++c;
    return c;
}

inline u64 count_primitive(const FreenessContext& ctx) {
    u64 c = 0;
    for (u64 a = 1; a < ctx.size(); ++a)
        if (ctx.is_primitive(a)) ++c;
    return c;
}

}  // namespace pnpair::freeness

#endif  // PNPAIR_FREENESS_HPP
