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

#ifndef PNPAIR_FFPOLY_BASE_FIELD_HPP
#define PNPAIR_FFPOLY_BASE_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnpair/ffpoly/factor_poly.hpp"
#include "pnpair/ffpoly/poly.hpp"
#include "pnpair/ntheory/factor.hpp"
#include "pnpair/ntheory/primes.hpp"

namespace pnpair::ff {

/// Digit-wise addition of base-p representations.
inline u64 digit_add(u64 a, u64 b, u64 p) {
    if (p == 2) return a ^ b;
    u64 r = 0, place = 1;
    while (a != 0 || b != 0) {
        u64 s = a % p + b % p;
        if (s >= p) s -= p;
        r += s * place;
        a /= p;
        b /= p;
        place *= p;
    }
    return r;
}

inline u64 digit_neg(u64 a, u64 p) {
    if (p == 2) return a;
    u64 r = 0, place = 1;
    while (a != 0) {
        const u64 d = a % p;
        r += (d == 0 ? 0 : p - d) * place;
        a /= p;
        place *= p;
    }
    return r;
}

/// The prime field F_p, elements are residues 0..p-1.
class PrimeField {
public:
    explicit PrimeField(u64 p) : p_(p) {
        if (!ntheory::is_prime_u64(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
        if (p >= (u64{1} << 32)) throw std::invalid_argument("PrimeField: characteristic must be below 2^32");
    }
    u64 p() const { return p_; }
    u64 size() const { return p_; }
    u64 add(u64 a, u64 b) const {
        const u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return a * b % p_; }
    u64 inv(u64 a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return ntheory::powmod(a, p_ - 2, p_);
    }
    u64 pow(u64 a, const BigInt& e) const {
        BigInt r, base = from_u64(a), mod = from_u64(p_);
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
        return to_u64(r);
    }
    u64 from_int(long long v) const {
        const long long m = static_cast<long long>(p_);
        return static_cast<u64>(((v % m) + m) % m);
    }

private:
    u64 p_;
};

/// F_q = F_p[y]/(base modulus), elements indexed by their base-p digit vectors.
///
/// For k > 1 multiplication goes through log/exp tables, which limits q to 2^24.
class BaseField {
public:
    static constexpr u64 kTableLimit = u64{1} << 24;

    BaseField(u64 p, unsigned k) : prime_(p), k_(k) {
        if (k == 0) throw std::invalid_argument("BaseField: k must be positive");
        q_ = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (q_ > UINT64_MAX / p) throw std::invalid_argument("BaseField: p^k overflows 64 bits");
            q_ *= p;
        }
        if (k == 1) {
            modulus_ = Poly(std::vector<u64>{0, 1});
            return;
        }
        if (q_ > kTableLimit) throw std::invalid_argument("BaseField: p^k above 2^24 with k > 1 is not supported");
        modulus_ = smallest_monic_irreducible(prime_, k);
        build_tables();
    }

    u64 p() const { return prime_.p(); }
    unsigned k() const { return k_; }
    u64 size() const { return q_; }
    /// Monic irreducible of degree k over F_p defining F_q (x when k = 1).
    const Poly& modulus() const { return modulus_; }

    u64 add(u64 a, u64 b) const { return k_ == 1 ? prime_.add(a, b) : digit_add(a, b, p()); }
    u64 neg(u64 a) const { return k_ == 1 ? prime_.neg(a) : digit_neg(a, p()); }
    u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }
    u64 mul(u64 a, u64 b) const {
        if (k_ == 1) return prime_.mul(a, b);
        if (a == 0 || b == 0) return 0;
        u64 s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    u64 inv(u64 a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        if (k_ == 1) return prime_.inv(a);
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    u64 pow(u64 a, const BigInt& e) const {
        if (k_ == 1) return prime_.pow(a, e);
        if (a == 0) return e == 0 ? 1 : 0;
        BigInt r = (from_u64(log_[a]) * e) % from_u64(q_ - 1);
        if (r < 0) r += from_u64(q_ - 1);
        return exp_[to_u64(r)];
    }
    u64 pow(u64 a, u64 e) const { return pow(a, from_u64(e)); }
    u64 from_int(long long v) const { return prime_.from_int(v); }

    /// Base-p digits of an element (coefficients over F_p), length k.
    std::vector<u64> digits(u64 a) const {
        std::vector<u64> d(k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = a % p();
            a /= p();
        }
        return d;
    }

    u64 from_digits(const std::vector<u64>& d) const {
        if (d.size() > k_) throw std::invalid_argument("BaseField: too many digits");
        u64 a = 0;
        for (std::size_t i = d.size(); i-- > 0;) {
            if (d[i] >= p()) throw std::invalid_argument("BaseField: digit out of range");
            a = a * p() + d[i];
        }
        return a;
    }

    /// a^p
    u64 frobenius(u64 a) const { return pow(a, p()); }

    /// Trace from F_q down to F_p.
    u64 trace(u64 a) const {
        u64 t = 0, cur = a;
        for (unsigned i = 0; i < k_; ++i) {
            t = add(t, cur);
            cur = frobenius(cur);
        }
        return t;
    }

    friend bool operator==(const BaseField& a, const BaseField& b) { return a.p() == b.p() && a.k_ == b.k_; }

private:
    // Multiplication by digit polynomials modulo the base modulus; only used to build the tables.
    u64 mul_slow(u64 a, u64 b) const {
        PolyRing<PrimeField> R(prime_);
        const Poly pa(digits(a)), pb(digits(b));
        const Poly r = R.mod(R.mul(pa, pb), modulus_);
        std::vector<u64> d = r.c;
        d.resize(k_, 0);
        return from_digits(d);
    }

    u64 pow_slow(u64 a, u64 e) const {
        u64 r = 1;
        while (e > 0) {
            if (e & 1) r = mul_slow(r, a);
            a = mul_slow(a, a);
            e >>= 1;
        }
        return r;
    }

    void build_tables() {
        const auto order = ntheory::factor_integer(from_u64(q_ - 1));
        u64 g = 2;
        for (;; ++g) {
            if (g >= q_) throw std::logic_error("BaseField: no primitive element found");
            bool primitive = true;
            for (const auto& pp : order.factors())
                if (pow_slow(g, (q_ - 1) / to_u64(pp.prime)) == 1) primitive = false;
            if (primitive) break;
        }
        generator_ = g;
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        u64 cur = 1;
        for (u64 i = 0; i < q_ - 1; ++i) {
            exp_[i] = static_cast<std::uint32_t>(cur);
            log_[cur] = static_cast<std::uint32_t>(i);
            cur = mul_slow(cur, g);
        }
    }

    PrimeField prime_;
    unsigned k_;
    u64 q_ = 0;
    Poly modulus_;
    u64 generator_ = 0;
    std::vector<std::uint32_t> exp_, log_;
};

}  // namespace pnpair::ff

#endif  // PNPAIR_FFPOLY_BASE_FIELD_HPP
