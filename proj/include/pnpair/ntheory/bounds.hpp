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

#ifndef PNPAIR_NTHEORY_BOUNDS_HPP
#define PNPAIR_NTHEORY_BOUNDS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

#include "pnpair/ntheory/factored_integer.hpp"
#include "pnpair/ntheory/primes.hpp"

namespace pnpair::ntheory {

/// Kahan-Babuska-Neumaier compensated sum.
class CompensatedSum {
public:
    void add(long double x) {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0, comp_ = 0;
};

struct BoundFamily {
    double t = 0;
    std::optional<u64> excluded_prime;
    long double log_value = 0;
    long double value = 1;
};

namespace detail {

inline long double ln2() { return std::log(2.0L); }

// Primes p < 2^t, ascending.
template <class Fn>
void for_each_prime_below_pow2(double t, Fn&& fn) {
    if (!(t > 0)) throw std::domain_error("bound: t must be positive");
    if (t > 40) throw std::domain_error("bound: t too large for prime enumeration");
    const long double limit = std::exp2(static_cast<long double>(t));
    const u64 hi = static_cast<u64>(std::ceil(limit)) + 1;
    for_each_prime_below(hi, [&](u64 p) {
        if (static_cast<long double>(p) < limit) fn(p);
    });
}

}  // namespace detail

/// A_t = prod over primes p < 2^t of 2 / p^(1/t), optionally skipping one prime.
inline BoundFamily a_t_bound(double t, std::optional<u64> excluded_prime = std::nullopt) {
    BoundFamily b;
    b.t = t;
    b.excluded_prime = excluded_prime;
    CompensatedSum s;
    const long double lt = t;
    detail::for_each_prime_below_pow2(t, [&](u64 p) {
        if (excluded_prime && p == *excluded_prime) return;
        s.add(detail::ln2() - std::log(static_cast<long double>(p)) / lt);
    });
    b.log_value = s.value();
    b.value = std::exp(b.log_value);
    return b;
}

/// A_{t,M}: the same product restricted to primes dividing M.
inline BoundFamily a_t_m_bound(double t, const FactoredInteger& m) {
    m.require_complete();
    BoundFamily b;
    b.t = t;
    CompensatedSum s;
    const long double limit = std::exp2(static_cast<long double>(t));
    for (const auto& pp : m.factors()) {
        if (!fits_u64(pp.prime)) continue;
        const auto p = static_cast<long double>(to_u64(pp.prime));
        if (p < limit) s.add(detail::ln2() - std::log(p) / static_cast<long double>(t));
    }
    b.log_value = s.value();
    b.value = std::exp(b.log_value);
    return b;
}

enum class PrimeClass { All, OddGreaterThan13, CongruentOneMod3 };

struct PrimeClassCap {
    unsigned r_max = 0;
    BigRational S = 0;
    BigInt P = 1;
};

inline bool in_class(u64 p, PrimeClass c) {
    switch (c) {
        case PrimeClass::All: return true;
        case PrimeClass::OddGreaterThan13: return p > 13;
        case PrimeClass::CongruentOneMod3: return p % 3 == 1;
    }
    return false;
}

/// Largest r with P_r <= bound, where P_r is the product of the first r primes of the class.
inline PrimeClassCap prime_class_cap(const BigInt& bound, PrimeClass cls) {
    if (bound < 2) throw std::domain_error("prime_class_cap: bound must be at least 2");
    PrimeClassCap out;
    for (u64 p = 2;; ++p) {
        if (!is_prime_u64(p) || !in_class(p, cls)) continue;
        const BigInt next = out.P * from_u64(p);
        if (next > bound) break;
        out.P = next;
        out.S += BigRational(1, from_u64(p));
        ++out.r_max;
    }
    out.S.canonicalize();
    return out;
}

}  // namespace pnpair::ntheory

#endif  // PNPAIR_NTHEORY_BOUNDS_HPP
