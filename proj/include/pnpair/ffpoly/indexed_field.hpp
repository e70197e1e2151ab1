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

#ifndef PNPAIR_FFPOLY_INDEXED_FIELD_HPP
#define PNPAIR_FFPOLY_INDEXED_FIELD_HPP

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnpair/ffpoly/base_field.hpp"
#include "pnpair/ffpoly/tower.hpp"

namespace pnpair::ff {

/// Largest q^n accepted by enumeration-based operations; PNPAIR_FIELD_CAP overrides 2^20.
inline u64 enumeration_cap() {
    if (const char* env = std::getenv("PNPAIR_FIELD_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v >= 2) return v;
    }
    return u64{1} << 20;
}

class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// The top field F_{q^n} with elements as integer indices and log/exp tables.
///
/// The index of an element is sum coords_i q^i, so F_q sits inside as the
/// indices below q. Requires q^n within the enumeration cap.
class IndexedField {
public:
    explicit IndexedField(TowerPtr tower, u64 cap = enumeration_cap()) : tower_(std::move(tower)) {
        const BigInt& order = tower_->order();
        if (order > from_u64(cap) || order > from_u64(u64{1} << 31))
            throw CapExceeded("field of size " + order.get_str() + " exceeds the enumeration cap " + std::to_string(cap));
        Q_ = to_u64(order);
        p_ = tower_->p();
        q_ = tower_->q();
        n_ = tower_->n();
        build_tables();
    }

    const FieldTower& tower() const { return *tower_; }
    const TowerPtr& tower_ptr() const { return tower_; }
    const BaseField& base() const { return tower_->base(); }
    u64 p() const { return p_; }
    u64 q() const { return q_; }
    unsigned n() const { return n_; }
    unsigned k() const { return tower_->k(); }
    /// q^n
    u64 size() const { return Q_; }
    u64 generator() const { return exp_[1 % (Q_ - 1)]; }

    u64 add(u64 a, u64 b) const { return digit_add(a, b, p_); }
    u64 neg(u64 a) const { return digit_neg(a, p_); }
    u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }
    u64 mul(u64 a, u64 b) const {
        if (a == 0 || b == 0) return 0;
        u64 s = static_cast<u64>(log_[a]) + log_[b];
        if (s >= Q_ - 1) s -= Q_ - 1;
        return exp_[s];
    }
    u64 inv(u64 a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return exp_[(Q_ - 1 - log_[a]) % (Q_ - 1)];
    }
    u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }
    u64 pow(u64 a, const BigInt& e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        BigInt r = (from_u64(log_[a]) * e) % from_u64(Q_ - 1);
        if (r < 0) r += from_u64(Q_ - 1);
        return exp_[to_u64(r)];
    }
    u64 pow(u64 a, u64 e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        return exp_[static_cast<u64>((static_cast<unsigned __int128>(log_[a]) * e) % (Q_ - 1))];
    }
    u64 from_int(long long v) const { return base().from_int(v); }

    /// Discrete log to the base of the generator; a != 0.
    u64 log(u64 a) const {
        if (a == 0) throw std::domain_error("log of zero");
        return log_[a];
    }
    u64 exp(u64 m) const { return exp_[m % (Q_ - 1)]; }

    /// beta^(q^i)
    u64 frobenius_q(u64 beta, u64 i) const {
        if (beta == 0) return 0;
        u64 m = log_[beta];
        for (u64 s = 0; s < i % n_; ++s) m = static_cast<u64>((static_cast<unsigned __int128>(m) * q_) % (Q_ - 1));
        return exp_[m];
    }

    /// f o beta for f over F_q.
    u64 poly_action(const Poly& f, u64 beta) const {
        u64 acc = 0, cur = beta;
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            if (f.c[i] != 0) acc = add(acc, mul(f.c[i], cur));
            cur = frobenius_q(cur, 1);
        }
        return acc;
    }

    /// Absolute trace down to F_p.
    u64 trace(u64 a) const { return trace_[a]; }

    FieldElement element(u64 idx) const { return tower_->from_index(from_u64(idx)); }
    u64 index(const FieldElement& e) const { return to_u64(tower_->index(e)); }

private:
    void build_tables() {
        const FieldTower& T = *tower_;
        const BaseField& B = T.base();
        // multiplication by the generator as an n x n matrix over F_q
        std::vector<std::vector<u64>> cols;
        for (unsigned j = 0; j < n_; ++j) {
            FieldElement xj = T.zero();
            xj.coords[j] = 1;
            cols.push_back(T.mul(T.generator(), xj).coords);
        }
        exp_.assign(Q_ - 1, 0);
        log_.assign(Q_, 0);
        std::vector<u64> cur(n_, 0), next(n_);
        cur[0] = 1;
        std::vector<u64> qpow(n_, 1);
        for (unsigned i = 1; i < n_; ++i) qpow[i] = qpow[i - 1] * q_;
        for (u64 m = 0; m < Q_ - 1; ++m) {
            u64 idx = 0;
            for (unsigned i = 0; i < n_; ++i) idx += cur[i] * qpow[i];
            if (m > 0 && idx == 1) throw std::logic_error("IndexedField: generator order too small");
            exp_[m] = static_cast<std::uint32_t>(idx);
            log_[idx] = static_cast<std::uint32_t>(m);
            std::fill(next.begin(), next.end(), 0);
            for (unsigned j = 0; j < n_; ++j) {
                if (cur[j] == 0) continue;
                for (unsigned i = 0; i < n_; ++i)
                    if (cols[j][i] != 0) next[i] = B.add(next[i], B.mul(cur[j], cols[j][i]));
            }
            cur.swap(next);
        }
        // Absolute trace is F_p-linear: tabulate it on the F_p basis p^j then extend digit-wise.
        const unsigned dim = static_cast<unsigned>(k() * n_);
        std::vector<u64> basis_trace(dim);
        u64 place = 1;
        for (unsigned j = 0; j < dim; ++j, place *= p_) {
            u64 t = 0, c = place;
            for (unsigned i = 0; i < dim; ++i) {
                t = add(t, c);
                c = pow(c, p_);
            }
            if (t >= p_) throw std::logic_error("IndexedField: trace not in prime field");
            basis_trace[j] = t;
        }
        trace_.assign(Q_, 0);
        for (u64 a = 1; a < Q_; ++a) {
            u64 t = 0, rest = a;
            for (unsigned j = 0; j < dim && rest != 0; ++j, rest /= p_) t += (rest % p_) * basis_trace[j];
            trace_[a] = static_cast<std::uint32_t>(t % p_);
        }
    }

    TowerPtr tower_;
    u64 Q_ = 0, p_ = 0, q_ = 0;
    unsigned n_ = 0;
    std::vector<std::uint32_t> exp_, log_, trace_;
};

using IndexedFieldPtr = std::shared_ptr<const IndexedField>;

inline IndexedFieldPtr make_indexed(u64 p, unsigned k, unsigned n, u64 cap = enumeration_cap()) {
    const BigInt size = big_pow(big_pow(from_u64(p), k), n);
    if (size > from_u64(cap)) throw CapExceeded("field of size " + size.get_str() + " exceeds the enumeration cap " + std::to_string(cap));
    return std::make_shared<const IndexedField>(build_tower(p, k, n), cap);
}

}  // namespace pnpair::ff

#endif  // PNPAIR_FFPOLY_INDEXED_FIELD_HPP
