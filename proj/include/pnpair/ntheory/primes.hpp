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

#ifndef PNPAIR_NTHEORY_PRIMES_HPP
#define PNPAIR_NTHEORY_PRIMES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pnpair::ntheory {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Primes are trial-divided up to this bound before any probabilistic work.
inline constexpr std::uint32_t kTrialDivisionLimit = 1'000'000;

inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// All primes p <= limit, ascending.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = primes_up_to(kTrialDivisionLimit);
    return primes;
}

/// Calls fn(p) for every prime p < limit in increasing order (segmented sieve).
template <class Fn>
void for_each_prime_below(u64 limit, Fn&& fn) {
    if (limit <= 2) return;
    const u64 root = isqrt(limit - 1);
    if (root > 0xFFFFFFFFull) throw std::domain_error("for_each_prime_below: limit too large");
    const auto base = primes_up_to(static_cast<std::uint32_t>(root));
    constexpr u64 kSegment = u64{1} << 18;
    std::vector<char> alive(kSegment);
    for (u64 lo = 2; lo < limit; lo += kSegment) {
        const u64 hi = std::min(lo + kSegment, limit);
        std::fill(alive.begin(), alive.begin() + static_cast<std::ptrdiff_t>(hi - lo), 1);
        for (const u64 p : base) {
            const u64 pp = p * p;
            if (pp >= hi) break;
            u64 start = std::max(pp, (lo + p - 1) / p * p);
            for (u64 j = start; j < hi; j += p) alive[j - lo] = 0;
        }
        for (u64 i = lo; i < hi; ++i)
            if (alive[i - lo]) fn(i);
    }
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin for the whole 64-bit range.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct PrimePowerParts {
    u64 prime = 0;
    unsigned exponent = 0;
};

/// Decomposes q = p^k, or nullopt when q is not a prime power.
inline std::optional<PrimePowerParts> prime_power(u64 q) {
    if (q < 2) return std::nullopt;
    if (is_prime_u64(q)) return PrimePowerParts{q, 1};
    for (unsigned k = 2; k < 64; ++k) {
        auto r = static_cast<u64>(std::pow(static_cast<long double>(q), 1.0L / k));
        if (r < 2) break;
        for (u64 c = (r > 2 ? r - 1 : 2); c <= r + 1; ++c) {
            u64 acc = 1;
            bool overflow = false;
            for (unsigned i = 0; i < k; ++i) {
                if (acc > q / c) {
                    overflow = true;
                    break;
                }
                acc *= c;
            }
            if (!overflow && acc == q && is_prime_u64(c)) return PrimePowerParts{c, k};
        }
    }
    return std::nullopt;
}

inline bool is_prime_power(u64 q) { return prime_power(q).has_value(); }

/// Prime powers in [lo, hi], ascending.
inline std::vector<u64> prime_powers_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 q = std::max<u64>(lo, 2); q <= hi; ++q) {
        if (is_prime_power(q)) out.push_back(q);
        if (q == UINT64_MAX) break;
    }
    return out;
}

/// Moebius function of a machine integer by trial division.
inline int moebius_u64(u64 n) {
    int mu = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline std::vector<u64> divisors_u64(u64 n) {
    std::vector<u64> small, large;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace pnpair::ntheory

#endif  // PNPAIR_NTHEORY_PRIMES_HPP
