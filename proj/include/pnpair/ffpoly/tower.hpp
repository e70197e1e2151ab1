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

#ifndef PNPAIR_FFPOLY_TOWER_HPP
#define PNPAIR_FFPOLY_TOWER_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnpair/ffpoly/base_field.hpp"
#include "pnpair/ffpoly/factor_poly.hpp"
#include "pnpair/ffpoly/poly.hpp"
#include "pnpair/ntheory/factor.hpp"

namespace pnpair::ff {

/// Element of F_{q^n}: n coordinates over F_q in the power basis of the top modulus.
struct FieldElement {
    std::vector<u64> coords;
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// The tower F_p < F_q < F_{q^n} with deterministic moduli and generator.
class FieldTower {
public:
    FieldTower(u64 p, unsigned k, unsigned n, ntheory::Millis budget = ntheory::default_budget())
        : base_(p, k), n_(n) {
        if (n == 0) throw std::invalid_argument("FieldTower: n must be positive");
        q_ = base_.size();
        order_ = big_pow(from_u64(q_), n);
        top_modulus_ = smallest_monic_irreducible(base_, n);
        PolyRing<BaseField> R(base_);
        const Poly xq = R.powmod(Poly::x(), from_u64(q_), top_modulus_);
        Poly cur = Poly::constant(1);
        for (unsigned j = 0; j < n_; ++j) {
            frob_.push_back(to_element(cur));
            cur = R.mulmod(cur, xq, top_modulus_);
        }
        factored_order_ = ntheory::cyclotomic_split(from_u64(q_), n_, budget);
        factored_order_.require_complete();
        for (BigInt idx = 1; idx < order_; ++idx) {
            FieldElement cand = from_index(idx);
            if (has_full_order(cand)) {
                generator_ = std::move(cand);
                break;
            }
        }
    }

    const BaseField& base() const { return base_; }
    u64 p() const { return base_.p(); }
    unsigned k() const { return base_.k(); }
    u64 q() const { return q_; }
    unsigned n() const { return n_; }
    /// q^n
    const BigInt& order() const { return order_; }
    /// q^n - 1, factored.
    const ntheory::FactoredInteger& factored_order() const { return factored_order_; }
    const Poly& base_modulus() const { return base_.modulus(); }
    const Poly& top_modulus() const { return top_modulus_; }
    const FieldElement& generator() const { return generator_; }

    FieldElement zero() const { return FieldElement{std::vector<u64>(n_, 0)}; }
    FieldElement one() const { return from_base(1); }
    FieldElement from_base(u64 c) const {
        FieldElement e = zero();
        e.coords[0] = c;
        return e;
    }
    bool is_zero(const FieldElement& a) const {
        for (auto c : a.coords)
            if (c != 0) return false;
        return true;
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement r = zero();
        for (unsigned i = 0; i < n_; ++i) r.coords[i] = base_.add(a.coords[i], b.coords[i]);
        return r;
    }
    FieldElement neg(const FieldElement& a) const {
        FieldElement r = zero();
        for (unsigned i = 0; i < n_; ++i) r.coords[i] = base_.neg(a.coords[i]);
        return r;
    }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }
    FieldElement scale(const FieldElement& a, u64 c) const {
        FieldElement r = zero();
        for (unsigned i = 0; i < n_; ++i) r.coords[i] = base_.mul(a.coords[i], c);
        return r;
    }
    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        PolyRing<BaseField> R(base_);
        return to_element(R.mulmod(Poly(a.coords), Poly(b.coords), top_modulus_));
    }
    FieldElement inv(const FieldElement& a) const {
        if (is_zero(a)) throw std::domain_error("inverse of zero");
        PolyRing<BaseField> R(base_);
        return to_element(R.mod(R.xgcd(Poly(a.coords), top_modulus_).s, top_modulus_));
    }
    FieldElement pow(const FieldElement& a, const BigInt& e) const {
        if (e < 0) return pow(inv(a), -e);
        PolyRing<BaseField> R(base_);
        return to_element(R.powmod(Poly(a.coords), e, top_modulus_));
    }

    /// beta^(q^i), i reduced mod n.
    FieldElement frobenius_q(const FieldElement& beta, u64 i) const {
        FieldElement cur = beta;
        for (u64 step = 0; step < i % n_; ++step) {
            FieldElement next = zero();
            for (unsigned j = 0; j < n_; ++j) {
                if (cur.coords[j] == 0) continue;
                next = add(next, scale(frob_[j], cur.coords[j]));
            }
            cur = std::move(next);
        }
        return cur;
    }

    /// f o beta = sum f_i beta^(q^i) for f over F_q.
    FieldElement poly_action(const Poly& f, const FieldElement& beta) const {
        FieldElement acc = zero(), cur = beta;
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            if (f.c[i] != 0) acc = add(acc, scale(cur, f.c[i]));
            cur = frobenius_q(cur, 1);
        }
        return acc;
    }

    /// sum coords_i q^i
    BigInt index(const FieldElement& a) const {
        BigInt r = 0;
        for (unsigned i = n_; i-- > 0;) r = r * from_u64(q_) + from_u64(a.coords[i]);
        return r;
    }

    FieldElement from_index(BigInt idx) const {
        if (idx < 0 || idx >= order_) throw std::out_of_range("FieldTower: index out of range");
        FieldElement e = zero();
        const BigInt qq = from_u64(q_);
        for (unsigned i = 0; i < n_; ++i) {
            e.coords[i] = to_u64(BigInt(idx % qq));
            idx /= qq;
        }
        return e;
    }

    FieldElement from_coords(std::vector<u64> coords) const {
        if (coords.size() > n_) throw std::invalid_argument("FieldTower: too many coordinates");
        coords.resize(n_, 0);
        for (auto c : coords)
            if (c >= q_) throw std::invalid_argument("FieldTower: coordinate out of range");
        return FieldElement{std::move(coords)};
    }

    bool has_full_order(const FieldElement& a) const {
        if (is_zero(a)) return false;
        const BigInt qm1 = order_ - 1;
        if (pow(a, qm1) != one()) return false;
        for (const auto& pp : factored_order_.factors())
            if (pow(a, qm1 / pp.prime) == one()) return false;
        return true;
    }

private:
    FieldElement to_element(const Poly& r) const {
        FieldElement e{r.c};
        e.coords.resize(n_, 0);
        return e;
    }

    BaseField base_;
    unsigned n_;
    u64 q_ = 0;
    BigInt order_;
    Poly top_modulus_;
    std::vector<FieldElement> frob_;
    ntheory::FactoredInteger factored_order_;
    FieldElement generator_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// Deterministic tower for (p, k, n).
inline TowerPtr build_tower(u64 p, unsigned k, unsigned n) { return std::make_shared<const FieldTower>(p, k, n); }

}  // namespace pnpair::ff

#endif  // PNPAIR_FFPOLY_TOWER_HPP
