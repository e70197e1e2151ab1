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

#ifndef PNPAIR_FFPOLY_POLY_HPP
#define PNPAIR_FFPOLY_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pnpair/ntheory/factored_integer.hpp"

namespace pnpair::ff {

using u64 = std::uint64_t;

/// Dense polynomial, little-endian coefficients, no trailing zeros.
///
/// Coefficients are field-element indices; 0 and 1 are always the field's
/// zero and one. The zero polynomial has an empty coefficient vector and
/// degree -1.
struct Poly {
    std::vector<u64> c;

    Poly() = default;
    explicit Poly(std::vector<u64> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly constant(u64 a) { return Poly(std::vector<u64>{a}); }
    static Poly x() { return Poly(std::vector<u64>{0, 1}); }
    /// x^d
    static Poly monomial(std::size_t d, u64 coeff = 1) {
        std::vector<u64> v(d + 1, 0);
        v[d] = coeff;
        return Poly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    u64 lead() const { return c.empty() ? 0 : c.back(); }
    u64 operator[](std::size_t i) const { return i < c.size() ? c[i] : 0; }

    friend bool operator==(const Poly&, const Poly&) = default;
};

/// Order used for sorting factor lists: by degree, then coefficients from the top down.
inline bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

/// Polynomial arithmetic over a field F.
///
/// F provides add, sub, neg, mul, inv on u64 element indices plus p() and size().
template <class F>
class PolyRing {
public:
    explicit PolyRing(const F& field) : f_(&field) {}

    const F& field() const { return *f_; }

    Poly add(const Poly& a, const Poly& b) const {
        std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->add(a[i], b[i]);
        return Poly(std::move(r));
    }

    Poly sub(const Poly& a, const Poly& b) const {
        std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(a[i], b[i]);
        return Poly(std::move(r));
    }

    Poly neg(const Poly& a) const {
        std::vector<u64> r(a.c.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->neg(a.c[i]);
        return Poly(std::move(r));
    }

    Poly scale(const Poly& a, u64 s) const {
        if (s == 0) return {};
        std::vector<u64> r(a.c.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->mul(a.c[i], s);
        return Poly(std::move(r));
    }

    Poly mul(const Poly& a, const Poly& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<u64> r(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (b.c[j] != 0) r[i + j] = f_->add(r[i + j], f_->mul(a.c[i], b.c[j]));
        }
        return Poly(std::move(r));
    }

    /// (quotient, remainder)
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly{}, a};
        std::vector<u64> r = a.c;
        const std::size_t db = b.c.size() - 1;
        std::vector<u64> q(r.size() - db, 0);
        const u64 inv_lead = f_->inv(b.lead());
        for (std::size_t i = r.size(); i-- > db;) {
            if (r[i] == 0) continue;
            const u64 coef = f_->mul(r[i], inv_lead);
            q[i - db] = coef;
            for (std::size_t j = 0; j <= db; ++j)
                if (b.c[j] != 0) r[i - db + j] = f_->sub(r[i - db + j], f_->mul(coef, b.c[j]));
        }
        r.resize(db);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }

    Poly div_exact(const Poly& a, const Poly& b) const {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
        return q;
    }

    bool divides(const Poly& d, const Poly& a) const { return mod(a, d).is_zero(); }

    Poly monic(const Poly& a) const {
        if (a.is_zero() || a.lead() == 1) return a;
        return scale(a, f_->inv(a.lead()));
    }

    /// Monic gcd; gcd(0, 0) = 0.
    Poly gcd(Poly a, Poly b) const {
        while (!b.is_zero()) {
            Poly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    struct Xgcd {
        Poly g, s, t;  // g = s*a + t*b, g monic
    };

    Xgcd xgcd(const Poly& a, const Poly& b) const {
        Poly r0 = a, r1 = b, s0 = Poly::constant(1), s1, t0, t1 = Poly::constant(1);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Poly s2 = sub(s0, mul(q, s1));
            Poly t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        const u64 li = f_->inv(r0.lead());
        return {scale(r0, li), scale(s0, li), scale(t0, li)};
    }

    Poly derivative(const Poly& a) const {
        if (a.c.size() <= 1) return {};
        std::vector<u64> r(a.c.size() - 1);
        for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = f_->mul(f_->from_int(static_cast<long long>(i % f_->p())), a.c[i]);
        return Poly(std::move(r));
    }

    u64 eval(const Poly& a, u64 x) const {
        u64 acc = 0;
        for (std::size_t i = a.c.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), a.c[i]);
        return acc;
    }

    Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return mod(mul(a, b), m); }

    Poly powmod(Poly base, const BigInt& e, const Poly& m) const {
        if (e < 0) throw std::domain_error("negative exponent");
        Poly result = mod(Poly::constant(1), m);
        base = mod(base, m);
        const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            result = mulmod(result, result, m);
            if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
        }
        return result;
    }

    Poly powmod(const Poly& base, u64 e, const Poly& m) const { return powmod(base, from_u64(e), m); }

    Poly pow(const Poly& base, unsigned e) const {
        Poly r = Poly::constant(1);
        for (unsigned i = 0; i < e; ++i) r = mul(r, base);
        return r;
    }

    /// Polynomial whose p-th power is a (requires a' = 0).
    Poly pth_root(const Poly& a) const {
        const u64 p = f_->p();
        std::vector<u64> r(a.c.empty() ? 0 : (a.c.size() - 1) / p + 1, 0);
        const BigInt root_exp = from_u64(f_->size() / p);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            if (i % p != 0) throw std::domain_error("pth_root: polynomial is not a p-th power");
            r[i / p] = f_->pow(a.c[i], root_exp);
        }
        return Poly(std::move(r));
    }

private:
    const F* f_;
};

}  // namespace pnpair::ff

#endif  // PNPAIR_FFPOLY_POLY_HPP
