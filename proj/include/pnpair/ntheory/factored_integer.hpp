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

#ifndef PNPAIR_NTHEORY_FACTORED_INTEGER_HPP
#define PNPAIR_NTHEORY_FACTORED_INTEGER_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnpair {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigInt big_pow(std::uint64_t base, unsigned long exp) { return big_pow(BigInt(base), exp); }

inline bool fits_u64(const BigInt& v) { return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& v) {
    if (!fits_u64(v)) throw std::overflow_error("value does not fit in 64 bits: " + v.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline BigInt from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

namespace ntheory {

enum class Certainty { Proven, ProbablePrimeParts, Incomplete };

inline const char* to_string(Certainty c) {
    switch (c) {
        case Certainty::Proven: return "proven";
        case Certainty::ProbablePrimeParts: return "probable";
        case Certainty::Incomplete: return "incomplete";
    }
    return "?";
}

inline Certainty weakest(Certainty a, Certainty b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;
};

/// Thrown when an exact answer needs a factorization that ran out of budget.
class IncompleteFactorization : public std::runtime_error {
public:
    explicit IncompleteFactorization(BigInt cofactor)
        : std::runtime_error("factorization incomplete, unfactored cofactor " + cofactor.get_str()),
          cofactor_(std::move(cofactor)) {}
    const BigInt& cofactor() const noexcept { return cofactor_; }

private:
    BigInt cofactor_;
};

/// A positive integer together with its prime factorization.
///
/// Invariants: primes strictly increasing, exponents >= 1; the product of the
/// prime powers equals value() unless certainty() is Incomplete, in which case
/// value() == product * cofactor() with cofactor() > 1 left unfactored.
class FactoredInteger {
public:
    FactoredInteger() : value_(1), cofactor_(1) {}

    FactoredInteger(BigInt value, std::vector<PrimePower> factors, Certainty certainty = Certainty::Proven,
                    BigInt cofactor = 1)
        : value_(std::move(value)), factors_(std::move(factors)), certainty_(certainty), cofactor_(std::move(cofactor)) {
        if (value_ < 1) throw std::invalid_argument("FactoredInteger: value must be positive");
        std::sort(factors_.begin(), factors_.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
        std::vector<PrimePower> merged;
        for (auto& f : factors_) {
            if (f.exponent == 0) continue;
            if (f.prime < 2) throw std::invalid_argument("FactoredInteger: factor below 2");
            if (!merged.empty() && merged.back().prime == f.prime)
                merged.back().exponent += f.exponent;
            else
                merged.push_back(std::move(f));
        }
        factors_ = std::move(merged);
        BigInt product = 1;
        for (const auto& f : factors_) product *= big_pow(f.prime, f.exponent);
        if (certainty_ == Certainty::Incomplete) {
            if (cofactor_ <= 1) throw std::invalid_argument("FactoredInteger: incomplete without cofactor");
            product *= cofactor_;
        } else if (cofactor_ != 1) {
            throw std::invalid_argument("FactoredInteger: cofactor recorded on a complete factorization");
        }
        if (product != value_) throw std::invalid_argument("FactoredInteger: factors do not reassemble the value");
    }

    static FactoredInteger from_primes(const std::vector<std::uint64_t>& primes_with_repetition) {
        BigInt value = 1;
        std::vector<PrimePower> f;
        for (auto p : primes_with_repetition) {
            value *= from_u64(p);
            f.push_back({from_u64(p), 1});
        }
        return FactoredInteger(value, std::move(f));
    }

    const BigInt& value() const noexcept { return value_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }
    Certainty certainty() const noexcept { return certainty_; }
    const BigInt& cofactor() const noexcept { return cofactor_; }
    bool is_complete() const noexcept { return certainty_ != Certainty::Incomplete; }

    void require_complete() const {
        if (!is_complete()) throw IncompleteFactorization(cofactor_);
    }

    std::vector<BigInt> primes() const {
        std::vector<BigInt> out;
        out.reserve(factors_.size());
        for (const auto& f : factors_) out.push_back(f.prime);
        return out;
    }

    bool has_prime(const BigInt& p) const {
        return std::any_of(factors_.begin(), factors_.end(), [&](const PrimePower& f) { return f.prime == p; });
    }

    /// theta = phi(value) / value.
    BigRational theta() const {
        require_complete();
        BigRational t = 1;
        for (const auto& f : factors_) t *= BigRational(f.prime - 1, f.prime);
        t.canonicalize();
        return t;
    }

    /// Factorization of a divisor d of value(), using only the known primes.
    FactoredInteger divisor(const BigInt& d) const {
        require_complete();
        if (d < 1 || value_ % d != 0) throw std::invalid_argument("FactoredInteger::divisor: " + d.get_str() +
                                                                  " does not divide " + value_.get_str());
        BigInt rest = d;
        std::vector<PrimePower> out;
        for (const auto& f : factors_) {
            unsigned e = 0;
            while (rest % f.prime == 0) {
                rest /= f.prime;
                ++e;
            }
            if (e > 0) out.push_back({f.prime, e});
        }
        return FactoredInteger(d, std::move(out), certainty_);
    }

    /// gcd(value, m), factored.
    FactoredInteger gcd_with(const BigInt& m) const {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), value_.get_mpz_t(), m.get_mpz_t());
        return divisor(g);
    }

    /// Product of the distinct primes.
    FactoredInteger radical() const {
        require_complete();
        BigInt r = 1;
        std::vector<PrimePower> out;
        for (const auto& f : factors_) {
            r *= f.prime;
            out.push_back({f.prime, 1});
        }
        return FactoredInteger(r, std::move(out), certainty_);
    }

    std::string to_string() const {
        if (factors_.empty() && cofactor_ == 1) return "1";
        std::string s;
        for (const auto& f : factors_) {
            if (!s.empty()) s += " * ";
            s += f.prime.get_str();
            if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
        }
        if (cofactor_ != 1) s += (s.empty() ? "" : " * ") + std::string("(") + cofactor_.get_str() + ")";
        return s;
    }

private:
    BigInt value_;
    std::vector<PrimePower> factors_;
    Certainty certainty_ = Certainty::Proven;
    BigInt cofactor_;
};

}  // namespace ntheory
}  // namespace pnpair

#endif  // PNPAIR_NTHEORY_FACTORED_INTEGER_HPP
