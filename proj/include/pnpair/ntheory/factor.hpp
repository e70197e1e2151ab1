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

#ifndef PNPAIR_NTHEORY_FACTOR_HPP
#define PNPAIR_NTHEORY_FACTOR_HPP

#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnpair/ntheory/factored_integer.hpp"
#include "pnpair/ntheory/primes.hpp"

namespace pnpair::ntheory {

using Millis = std::chrono::milliseconds;

/// Per-piece budget; PNPAIR_BUDGET_MS overrides the 10 s default.
inline Millis default_budget() {
    if (const char* env = std::getenv("PNPAIR_BUDGET_MS")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return Millis(v);
    }
    return Millis(10'000);
}

enum class Primality { Composite, ProvenPrime, ProbablePrime };

namespace detail {

// Miller-Rabin with bases 2..41 is deterministic below this bound.
inline const BigInt& deterministic_mr_limit() {
    static const BigInt limit("3317044064679887385961981");
    return limit;
}

inline bool mr_round(const BigInt& n, const BigInt& d, unsigned s, unsigned long a) {
    BigInt x;
    const BigInt base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const BigInt nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

}  // namespace detail

inline Primality primality(const BigInt& n) {
    if (n < 2) return Primality::Composite;
    if (fits_u64(n)) return is_prime_u64(to_u64(n)) ? Primality::ProvenPrime : Primality::Composite;
    if (n < detail::deterministic_mr_limit()) {
        BigInt d = n - 1;
        unsigned s = 0;
        while (mpz_even_p(d.get_mpz_t())) {
            d /= 2;
            ++s;
        }
        for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul})
            if (!detail::mr_round(n, d, s, a)) return Primality::Composite;
        return Primality::ProvenPrime;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 64) ? Primality::ProbablePrime : Primality::Composite;
}

namespace detail {

using Clock = std::chrono::steady_clock;

// Brent's cycle finding with batched gcds; seeds c = 1, 2, 3, ... and x0 = 2.
inline std::optional<u64> rho_u64(u64 n, Clock::time_point deadline) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1; c < 64; ++c) {
        u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
        const auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        const u64 m = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
            }
            if (Clock::now() > deadline) return std::nullopt;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return std::nullopt;
}

inline std::optional<BigInt> rho_big(const BigInt& n, Clock::time_point deadline) {
    if (fits_u64(n)) {
        auto r = rho_u64(to_u64(n), deadline);
        if (!r) return std::nullopt;
        return from_u64(*r);
    }
    for (unsigned long c = 1; c < 64; ++c) {
        BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, t;
        const auto step = [&](BigInt& v) {
            mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
            mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        const unsigned long m = 256;
        for (unsigned long r = 1; g == 1; r <<= 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            for (unsigned long k = 0; k < r && g == 1; k += m) {
                ys = y;
                const unsigned long len = std::min(m, r - k);
                for (unsigned long i = 0; i < len; ++i) {
                    step(y);
                    mpz_sub(t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    mpz_mul(q.get_mpz_t(), q.get_mpz_t(), t.get_mpz_t());
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            if (Clock::now() > deadline) return std::nullopt;
        }
        if (g == n) {
            do {
                step(ys);
                mpz_sub(t.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
                mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return std::nullopt;
}

// Returns (root, k) with n = root^k and k maximal, or (n, 1).
inline std::pair<BigInt, unsigned> perfect_power_root(const BigInt& n) {
    if (!mpz_perfect_power_p(n.get_mpz_t())) return {n, 1};
    const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned k = bits; k >= 2; --k) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1) return {root, k};
    }
    return {n, 1};
}

struct Accumulator {
    std::map<BigInt, unsigned> primes;
    BigInt cofactor = 1;
    Certainty certainty = Certainty::Proven;
};

// Factors n into acc; when modulus > 1 every prime factor of n is known to
// divide modulus or be congruent to 1 mod modulus, which narrows trial division.
inline void factor_into(BigInt n, Clock::time_point deadline, u64 modulus, Accumulator& acc) {
    if (n < 1) throw std::domain_error("factor_integer: input must be positive");
    for (const std::uint32_t p : small_primes()) {
        if (n == 1) break;
        if (modulus > 1 && p % modulus != 1 && modulus % p != 0) continue;
        if (BigInt(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++acc.primes[BigInt(p)];
        }
    }
    if (n == 1) return;

    std::vector<std::pair<BigInt, unsigned>> work{{n, 1}};
    while (!work.empty()) {
        auto [m, mult] = std::move(work.back());
        work.pop_back();
        if (m == 1) continue;
        const Primality pr = primality(m);
        if (pr != Primality::Composite) {
            acc.primes[m] += mult;
            if (pr == Primality::ProbablePrime) acc.certainty = weakest(acc.certainty, Certainty::ProbablePrimeParts);
            continue;
        }
        auto [root, k] = perfect_power_root(m);
        if (k > 1) {
            work.emplace_back(root, mult * k);
            continue;
        }
        auto split = rho_big(m, deadline);
        if (!split) {
            for (unsigned i = 0; i < mult; ++i) acc.cofactor *= m;
            acc.certainty = Certainty::Incomplete;
            continue;
        }
        BigInt other = m / *split;
        work.emplace_back(*split, mult);
        work.emplace_back(std::move(other), mult);
    }
}

inline FactoredInteger finish(const BigInt& value, Accumulator& acc) {
    std::vector<PrimePower> f;
    f.reserve(acc.primes.size());
    for (auto& [p, e] : acc.primes) f.push_back({p, e});
    return FactoredInteger(value, std::move(f), acc.certainty, acc.cofactor);
}

}  // namespace detail

/// Factors N >= 1: trial division by primes up to 10^6, then primality
/// testing, perfect-power detection and Pollard-Brent rho under the budget.
inline FactoredInteger factor_integer(const BigInt& n, Millis budget = default_budget()) {
    if (n == 0) throw std::domain_error("factor_integer: N = 0");
    if (n < 0) throw std::domain_error("factor_integer: N must be positive");
    detail::Accumulator acc;
    detail::factor_into(n, detail::Clock::now() + budget, 1, acc);
    return detail::finish(n, acc);
}

inline FactoredInteger factor_integer(u64 n, Millis budget = default_budget()) {
    return factor_integer(from_u64(n), budget);
}

/// The d-th cyclotomic polynomial evaluated at q.
inline BigInt cyclotomic_value(u64 d, const BigInt& q) {
    if (d == 0) throw std::domain_error("cyclotomic_value: d = 0");
    BigInt num = 1, den = 1;
    for (const u64 e : divisors_u64(d)) {
        const int mu = moebius_u64(d / e);
        if (mu == 0) continue;
        const BigInt term = big_pow(q, e) - 1;
        (mu > 0 ? num : den) *= term;
    }
    return num / den;
}

/// Factorization of q^n - 1 assembled from the pieces Phi_d(q), d | n.
inline FactoredInteger cyclotomic_split(const BigInt& q, u64 n, Millis budget_per_piece = default_budget()) {
    if (q < 2) throw std::domain_error("cyclotomic_split: q must be at least 2");
    if (n == 0) throw std::domain_error("cyclotomic_split: n must be positive");
    detail::Accumulator acc;
    for (const u64 d : divisors_u64(n)) {
        const BigInt piece = cyclotomic_value(d, q);
        detail::factor_into(piece, detail::Clock::now() + budget_per_piece, d, acc);
    }
    return detail::finish(big_pow(q, n) - 1, acc);
}

inline FactoredInteger cyclotomic_split(u64 q, u64 n, Millis budget_per_piece = default_budget()) {
    return cyclotomic_split(from_u64(q), n, budget_per_piece);
}

}  // namespace pnpair::ntheory

#endif  // PNPAIR_NTHEORY_FACTOR_HPP
