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

#ifndef PNPAIR_UPSILON_HPP
#define PNPAIR_UPSILON_HPP

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnpair/ffpoly/factor_poly.hpp"
#include "pnpair/ffpoly/indexed_field.hpp"
#include "pnpair/ffpoly/poly.hpp"
#include "pnpair/ntheory/primes.hpp"

namespace pnpair::upsilon {

using ff::Poly;
using ff::u64;

/// f1/f2 over the top field, reduced so that gcd(f1, f2) = 1.
///
/// No leading-coefficient normalization is applied: c*f1/f2 and f1/f2 are
/// different functions.
class RationalFn {
public:
    RationalFn() : f2_(Poly::constant(1)) {}

    RationalFn(const ff::IndexedField& field, Poly f1, Poly f2, unsigned m1, unsigned m2)
        : f1_(std::move(f1)), f2_(std::move(f2)), m1_(m1), m2_(m2) {
        if (f2_.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
        ff::PolyRing<ff::IndexedField> R(field);
        const Poly g = R.gcd(f1_, f2_);
        if (g.degree() > 0) {
            f1_ = R.div_exact(f1_, g);
            f2_ = R.div_exact(f2_, g);
        } else if (f1_.is_zero()) {
            f2_ = Poly::constant(1);
        }
    }

    /// Caps default to the degrees themselves.
    static RationalFn of(const ff::IndexedField& field, const Poly& f1, const Poly& f2) {
        return RationalFn(field, f1, f2, static_cast<unsigned>(std::max(f1.degree(), 0)),
                          static_cast<unsigned>(std::max(f2.degree(), 0)));
    }

    const Poly& f1() const { return f1_; }
    const Poly& f2() const { return f2_; }
    unsigned m1() const { return m1_; }
    unsigned m2() const { return m2_; }
    bool within_caps() const {
        return f1_.degree() <= static_cast<int>(m1_) && f2_.degree() <= static_cast<int>(m2_);
    }

    friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.f1_ == b.f1_ && a.f2_ == b.f2_; }

private:
    Poly f1_, f2_;
    unsigned m1_ = 0, m2_ = 0;
};

enum class Mode { BigField, Subfield };

struct Membership {
    bool member = false;
    std::optional<ff::PolyFactor> witness;
    std::string reason;
};

inline bool coefficients_in_base(const ff::IndexedField& field, const Poly& f) {
    for (auto c : f.c)
        if (c >= field.q()) return false;
    return true;
}

/// Membership in the admissible set: degree caps, coprimality, and an
/// irreducible factor t != x of f1*f2 whose exact multiplicity a has gcd(a, Q-1) = 1.
inline Membership in_upsilon(const ff::IndexedField& field, const RationalFn& f, Mode mode = Mode::BigField) {
    Membership out;
    if (!f.within_caps()) {
        out.reason = "degree caps exceeded";
        return out;
    }
    if (f.f1().is_zero()) {
        out.reason = "f1 = 0";
        return out;
    }
    ff::FactoredPoly fac;
    u64 qm1 = 0;
    if (mode == Mode::BigField) {
        ff::PolyRing<ff::IndexedField> R(field);
        if (R.gcd(f.f1(), f.f2()).degree() > 0) {
            out.reason = "f1 and f2 are not coprime";
            return out;
        }
        const Poly prod = R.mul(f.f1(), f.f2());
        if (prod.degree() <= 0) {
            out.reason = "f1*f2 is constant";
            return out;
        }
        fac = ff::factor_poly(field, prod);
        qm1 = field.size() - 1;
    } else {
        if (!coefficients_in_base(field, f.f1()) || !coefficients_in_base(field, f.f2())) {
            out.reason = "coefficients outside F_q";
            return out;
        }
        ff::PolyRing<ff::BaseField> R(field.base());
        if (R.gcd(f.f1(), f.f2()).degree() > 0) {
            out.reason = "f1 and f2 are not coprime";
            return out;
        }
        const Poly prod = R.mul(f.f1(), f.f2());
        if (prod.degree() <= 0) {
            out.reason = "f1*f2 is constant";
            return out;
        }
        fac = ff::factor_poly(field.base(), prod);
        qm1 = field.q() - 1;
    }
    for (const auto& t : fac.factors) {
        if (t.poly == Poly::x()) continue;
        if (std::gcd(static_cast<u64>(t.multiplicity), qm1) == 1) {
            out.member = true;
            out.witness = t;
            return out;
        }
    }
    out.reason = "no irreducible factor other than x with multiplicity coprime to Q-1";
    return out;
}

/// f(alpha), or nullopt when f2(alpha) = 0.
inline std::optional<u64> evaluate(const ff::IndexedField& field, const RationalFn& f, u64 alpha) {
    ff::PolyRing<ff::IndexedField> R(field);
    const u64 den = R.eval(f.f2(), alpha);
    if (den == 0) return std::nullopt;
    return field.div(R.eval(f.f1(), alpha), den);
}

/// Membership mask of S_f = {alpha : f1(alpha) f2(alpha) = 0} together with 0.
inline std::vector<char> exceptional_mask(const ff::IndexedField& field, const RationalFn& f) {
    ff::PolyRing<ff::IndexedField> R(field);
    std::vector<char> mask(field.size(), 0);
    mask[0] = 1;
    for (u64 a = 1; a < field.size(); ++a)
        if (R.eval(f.f1(), a) == 0 || R.eval(f.f2(), a) == 0) mask[a] = 1;
    return mask;
}

inline std::vector<u64> exceptional_set(const ff::IndexedField& field, const RationalFn& f) {
    const auto mask = exceptional_mask(field, f);
    std::vector<u64> out;
    for (u64 a = 0; a < mask.size(); ++a)
        if (mask[a]) out.push_back(a);
    return out;
}

/// Number of candidate pairs (f1, f2) scanned by the enumeration: f1 of degree <= m1, f2 monic of degree <= m2.
inline BigInt upsilon_candidates(u64 Q, unsigned m1, unsigned m2) {
    BigInt monic = 0;
    for (unsigned d = 0; d <= m2; ++d) monic += big_pow(from_u64(Q), d);
    return (big_pow(from_u64(Q), m1 + 1) - 1) * monic;
}

/// Deterministic cursor over the admissible functions: f2 monic (by degree,
/// then coefficient index), f1 nonzero by coefficient index, one
/// representative per function.
class UpsilonCursor {
public:
    UpsilonCursor(ff::IndexedFieldPtr field, unsigned m1, unsigned m2, const BigInt& cap, Mode mode = Mode::BigField)
        : field_(std::move(field)), m1_(m1), m2_(m2), mode_(mode) {
        const BigInt total = upsilon_candidates(field_->size(), m1, m2);
        if (total > cap)
            throw ff::CapExceeded("admissible-function enumeration needs " + total.get_str() + " candidates, cap " +
                                  cap.get_str());
        if (total > from_u64(u64{1} << 62)) throw ff::CapExceeded("admissible-function enumeration too large");
        f1_limit_ = ipow(field_->size(), m1 + 1);
    }

    std::optional<RationalFn> next() {
        const u64 Q = field_->size();
        while (true) {
            if (f2_degree_ > m2_) return std::nullopt;
            ++f1_index_;
            if (f1_index_ >= f1_limit_) {
                f1_index_ = 0;
                ++f2_low_;
                if (f2_low_ >= ipow(Q, f2_degree_)) {
                    f2_low_ = 0;
                    ++f2_degree_;
                }
                continue;
            }
            Poly f1 = ff::poly_from_index(*field_, f1_index_);
            std::vector<u64> c = ff::poly_from_index(*field_, f2_low_).c;
            c.resize(f2_degree_ + 1, 0);
            c[f2_degree_] = 1;
            Poly f2(std::move(c));
            ff::PolyRing<ff::IndexedField> R(*field_);
            if (R.gcd(f1, f2).degree() > 0) continue;
            RationalFn f(*field_, f1, f2, m1_, m2_);
            if (in_upsilon(*field_, f, mode_).member) return f;
        }
    }

private:
    static u64 ipow(u64 b, unsigned e) {
        u64 r = 1;
        for (unsigned i = 0; i < e; ++i) r *= b;
        return r;
    }

    ff::IndexedFieldPtr field_;
    unsigned m1_, m2_;
    Mode mode_;
    u64 f1_limit_ = 0;
    u64 f1_index_ = 0;
    u64 f2_low_ = 0;
    unsigned f2_degree_ = 0;
};

/// Calls fn(f) for every admissible function until fn returns false.
template <class Fn>
void enumerate_upsilon(const ff::IndexedFieldPtr& field, unsigned m1, unsigned m2, const BigInt& cap, Fn&& fn,
                       Mode mode = Mode::BigField) {
    UpsilonCursor cur(field, m1, m2, cap, mode);
    while (auto f = cur.next())
        if (!fn(*f)) break;
}

}  // namespace pnpair::upsilon

#endif  // PNPAIR_UPSILON_HPP
