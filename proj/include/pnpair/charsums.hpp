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

#ifndef PNPAIR_CHARSUMS_HPP
#define PNPAIR_CHARSUMS_HPP

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnpair/ffpoly/factor_poly.hpp"
#include "pnpair/freeness.hpp"
#include "pnpair/ntheory/arith.hpp"
#include "pnpair/upsilon.hpp"

namespace pnpair::charsums {

using cd = std::complex<double>;
using ff::Poly;
using ff::u64;
using freeness::XnDivisor;

inline constexpr double kIndicatorTolerance = 1e-6;

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// chi_j(g^m) = exp(2 pi i j m / (Q-1)) for the fixed generator g.
struct MultCharacter {
    u64 j = 0;
    bool trivial() const { return j == 0; }
};

/// psi_c(beta) = exp(2 pi i Tr(c beta) / p).
struct AddCharacter {
    u64 c = 0;
    bool trivial() const { return c == 0; }
};

struct Indicator {
    cd value;
    int indicator = 0;
    double deviation = 0;
};

inline Indicator round_indicator(cd v) {
    Indicator r;
    r.value = v;
    const double nearest = std::round(v.real());
    r.deviation = std::abs(v - cd(nearest, 0));
    if (r.deviation > kIndicatorTolerance)
        throw NumericError("characteristic sum " + std::to_string(v.real()) + "+" + std::to_string(v.imag()) +
                           "i is not within tolerance of an integer");
    if (nearest != 0 && nearest != 1)
        throw NumericError("characteristic sum rounds to " + std::to_string(nearest) + ", expected 0 or 1");
    r.indicator = static_cast<int>(nearest);
    return r;
}

/// v = c * prod base_i^exp_i with integer exponents.
struct PowerProduct {
    std::vector<std::pair<Poly, long long>> terms;
};

enum class HypothesisStatus { Verified, Violated, Unchecked };

inline const char* to_string(HypothesisStatus s) {
    switch (s) {
        case HypothesisStatus::Verified: return "verified";
        case HypothesisStatus::Violated: return "violated";
        case HypothesisStatus::Unchecked: return "unchecked";
    }
    return "?";
}

struct WeilData {
    unsigned D1 = 0, D2 = 0, D3 = 0, D4 = 0;
};

struct WeilResult {
    double lhs = 0, rhs = 0;
    bool holds = false;
    WeilData data;
    HypothesisStatus hypothesis = HypothesisStatus::Unchecked;
    bool hybrid = false;
};

/// Character tables and characteristic functions on an enumerable F_{q^n}.
class CharacterContext {
public:
    explicit CharacterContext(freeness::ContextPtr ctx) : ctx_(std::move(ctx)) {
        const auto& F = ctx_->field();
        Q_ = F.size();
        p_ = F.p();
        roots_.resize(Q_ - 1);
        for (u64 m = 0; m < Q_ - 1; ++m) roots_[m] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(Q_ - 1));
        proots_.resize(p_);
        for (u64 m = 0; m < p_; ++m) proots_[m] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(p_));
        divisors_ = ctx_->monic_divisors();
        for (std::size_t i = 0; i < divisors_.size(); ++i) divisor_pos_[divisors_[i].exps] = i;
        for (u64 b = 0, place = 1; b < static_cast<u64>(F.k()) * F.n(); ++b, place *= p_) basis_conj_.push_back(ctx_->conjugates(place));
    }

    const freeness::FreenessContext& ctx() const { return *ctx_; }
    const ff::IndexedField& field() const { return ctx_->field(); }
    u64 size() const { return Q_; }
    const std::vector<XnDivisor>& xn_divisors() const { return divisors_; }

    cd chi(const MultCharacter& x, u64 alpha) const {
        if (alpha == 0) return 0;
        const auto m = static_cast<u64>((static_cast<unsigned __int128>(x.j) * field().log(alpha)) % (Q_ - 1));
        return roots_[m];
    }

    cd psi(const AddCharacter& a, u64 beta) const { return proots_[field().trace(field().mul(a.c, beta))]; }

    /// Multiplicative order of a character.
    u64 order(const MultCharacter& x) const { return (Q_ - 1) / std::gcd(x.j, Q_ - 1); }

    /// The phi(d) characters of exact order d.
    std::vector<MultCharacter> characters_of_order(u64 d) const {
        if (d == 0 || (Q_ - 1) % d != 0) throw std::invalid_argument("character order must divide q^n - 1");
        std::vector<MultCharacter> out;
        const u64 step = (Q_ - 1) / d;
        for (u64 u = 0; u < d; ++u)
            if (std::gcd(u, d) == 1) out.push_back({step * u % (Q_ - 1)});
        return out;
    }

    /// Whether psi_c o h is the trivial character.
    bool kills(const AddCharacter& a, const Poly& h) const {
        const auto& F = field();
        for (const auto& conj : basis_conj_)
            if (F.trace(F.mul(a.c, ctx_->action(h, conj))) != 0) return false;
        return true;
    }

    /// F_q-order of psi_c as a divisor of x^n - 1.
    const XnDivisor& fq_order(const AddCharacter& a) const {
        ensure_add_orders();
        return divisors_[add_order_[a.c]];
    }

    /// The Phi(h) additive characters of F_q-order h.
    std::vector<AddCharacter> characters_of_order(const XnDivisor& h) const {
        ensure_add_orders();
        const auto it = divisor_pos_.find(h.exps);
        if (it == divisor_pos_.end()) throw std::invalid_argument("h does not divide x^n - 1");
        std::vector<AddCharacter> out;
        for (u64 c = 0; c < Q_; ++c)
            if (add_order_[c] == it->second) out.push_back({c});
        return out;
    }

    /// theta(s) sum_{d | s} mu(d)/phi(d) sum_{ord chi = d} chi(alpha)
    cd rho_value(u64 alpha, u64 s) const {
        if (alpha == 0) throw std::domain_error("rho: alpha = 0");
        const auto fs = ctx_->factored_order().divisor(from_u64(s));
        cd total = 0;
        for (const auto& d : ntheory::squarefree_divisors(fs)) {
            const auto fd = fs.divisor(d);
            cd inner = 0;
            for (const auto& x : characters_of_order(to_u64(d))) inner += chi(x, alpha);
            total += static_cast<double>(ntheory::moebius(fd)) / ntheory::euler_phi(fd).get_d() * inner;
        }
        return fs.theta().get_d() * total;
    }

    Indicator rho(u64 alpha, u64 s) const { return round_indicator(rho_value(alpha, s)); }

    /// Phi(g)/N(g) sum_{h | g} mu'(h)/Phi(h) sum_{Ord psi = h} psi(beta)
    cd kappa_value(u64 beta, const XnDivisor& g) const {
        cd total = 0;
        for (const auto& h : squarefree_subdivisors(g)) {
            cd inner = 0;
            for (const auto& a : characters_of_order(h)) inner += psi(a, beta);
            total += static_cast<double>(ctx_->mu(h)) / ctx_->Phi(h).get_d() * inner;
        }
        return (ctx_->Phi(g).get_d() / ctx_->Norm(g).get_d()) * total;
    }

    Indicator kappa(u64 beta, const XnDivisor& g) const { return round_indicator(kappa_value(beta, g)); }

    /// Monic square-free divisors of g.
    std::vector<XnDivisor> squarefree_subdivisors(const XnDivisor& g) const {
        std::vector<XnDivisor> out;
        for (const auto& h : divisors_) {
            bool ok = true;
            for (std::size_t i = 0; i < h.exps.size(); ++i)
                if (h.exps[i] > 1 || h.exps[i] > g.exps[i]) ok = false;
            if (ok) out.push_back(h);
        }
        return out;
    }

    /// sum over alpha outside S_f of chi1(alpha) chi2(f(alpha)) psi(alpha)
    cd chi_tilde(const upsilon::RationalFn& f, const MultCharacter& x1, const MultCharacter& x2,
                 const AddCharacter& a) const {
        const auto mask = upsilon::exceptional_mask(field(), f);
        cd total = 0;
        for (u64 alpha = 1; alpha < Q_; ++alpha) {
            if (mask[alpha]) continue;
            const u64 fa = *upsilon::evaluate(field(), f, alpha);
            total += chi(x1, alpha) * chi(x2, fa) * psi(a, alpha);
        }
        return total;
    }

    /// N_f(e1, e2, g) through the full triple character expansion.
    double n_f_by_characters(const upsilon::RationalFn& f, u64 e1, u64 e2, const XnDivisor& g) const {
        const auto& order = ctx_->factored_order();
        const auto fe1 = order.divisor(from_u64(e1));
        const auto fe2 = order.divisor(from_u64(e2));
        const auto mask = upsilon::exceptional_mask(field(), f);
        std::vector<u64> alphas, logs_a, logs_f;
        for (u64 alpha = 1; alpha < Q_; ++alpha) {
            if (mask[alpha]) continue;
            alphas.push_back(alpha);
            logs_a.push_back(field().log(alpha));
            logs_f.push_back(field().log(*upsilon::evaluate(field(), f, alpha)));
        }
        struct Weighted {
            std::vector<u64> js;
            double weight;
        };
        const auto mult_side = [&](const ntheory::FactoredInteger& fe) {
            std::vector<Weighted> out;
            for (const auto& d : ntheory::squarefree_divisors(fe)) {
                const auto fd = fe.divisor(d);
                Weighted w{{}, static_cast<double>(ntheory::moebius(fd)) / ntheory::euler_phi(fd).get_d()};
                for (const auto& x : characters_of_order(to_u64(d))) w.js.push_back(x.j);
                out.push_back(std::move(w));
            }
            return out;
        };
        const auto side1 = mult_side(fe1), side2 = mult_side(fe2);
        cd total = 0;
        for (const auto& h : squarefree_subdivisors(g)) {
            const double wh = static_cast<double>(ctx_->mu(h)) / ctx_->Phi(h).get_d();
            const auto adds = characters_of_order(h);
            for (const auto& w1 : side1)
                for (const auto& w2 : side2) {
                    cd block = 0;
                    for (const u64 j1 : w1.js)
                        for (const u64 j2 : w2.js)
                            for (const auto& a : adds) {
                                cd s = 0;
                                for (std::size_t i = 0; i < alphas.size(); ++i) {
                                    const auto m = static_cast<u64>(
                                        (static_cast<unsigned __int128>(j1) * logs_a[i] +
                                         static_cast<unsigned __int128>(j2) * logs_f[i]) %
                                        (Q_ - 1));
                                    s += roots_[m] * psi(a, alphas[i]);
                                }
                                block += s;
                            }
                    total += w1.weight * w2.weight * wh * block;
                }
        }
        const double prefactor = fe1.theta().get_d() * fe2.theta().get_d() * ctx_->Phi(g).get_d() / ctx_->Norm(g).get_d();
        const cd value = prefactor * total;
        if (std::abs(value.imag()) > 1e-4) throw NumericError("character expansion has a non-real value");
        return value.real();
    }

    /// Empirical check of the Weil-type bound for sum chi(v(alpha)) [psi(u(alpha))].
    WeilResult weil_check(const PowerProduct& v, const std::optional<upsilon::RationalFn>& u, const MultCharacter& x,
                          const AddCharacter& a) const {
        const auto& F = field();
        ff::PolyRing<ff::IndexedField> R(F);
        // Merge v into distinct monic irreducibles with net exponents.
        std::map<std::vector<u64>, long long> net;
        std::map<std::vector<u64>, Poly> polys;
        u64 unit_log_sum = 0;
        for (const auto& [base, e] : v.terms) {
            if (base.is_zero()) throw std::invalid_argument("weil_check: zero factor in v");
            const auto fac = ff::factor_poly(F, base);
            const long long em = e % static_cast<long long>(Q_ - 1);
            const u64 ue = static_cast<u64>(em < 0 ? em + static_cast<long long>(Q_ - 1) : em);
            unit_log_sum = static_cast<u64>((unit_log_sum + static_cast<unsigned __int128>(F.log(fac.unit)) * ue) % (Q_ - 1));
            for (const auto& t : fac.factors) {
                net[t.poly.c] += e * static_cast<long long>(t.multiplicity);
                polys[t.poly.c] = t.poly;
            }
        }
        std::vector<std::pair<Poly, long long>> s;
        for (const auto& [key, e] : net)
            if (e != 0) s.emplace_back(polys[key], e);

        WeilResult out;
        for (const auto& [poly, e] : s) out.data.D1 += static_cast<unsigned>(poly.degree());
        const u64 ordx = order(x);
        const bool hybrid = u.has_value() && !a.trivial();
        out.hybrid = hybrid;
        if (hybrid) {
            const int degu = u->f1().degree() - u->f2().degree();
            out.data.D2 = static_cast<unsigned>(std::max(degu, 0));
            out.data.D3 = static_cast<unsigned>(std::max(u->f2().degree(), 0));
            if (u->f2().degree() > 0) {
                for (const auto& t : ff::factor_poly(F, u->f2()).factors) {
                    if (net.count(t.poly.c) == 0 || net.at(t.poly.c) == 0) out.data.D4 += static_cast<unsigned>(t.poly.degree());
                }
            }
            // Not of the form r^Q - r as soon as some pole order is not divisible by Q.
            if (u->f1().is_zero() || (u->f1().degree() <= 0 && u->f2().degree() <= 0)) {
                out.hypothesis = HypothesisStatus::Violated;
            } else {
                bool certified = degu > 0 && static_cast<u64>(degu) % Q_ != 0;
                if (u->f2().degree() > 0)
                    for (const auto& t : ff::factor_poly(F, u->f2()).factors)
                        if (t.multiplicity % Q_ != 0) certified = true;
                out.hypothesis = certified ? HypothesisStatus::Verified : HypothesisStatus::Unchecked;
            }
        } else {
            // v is an ord(chi)-th power over the algebraic closure iff every net exponent is divisible by ord(chi).
            bool some_not_divisible = false;
            for (const auto& [poly, e] : s)
                if (e % static_cast<long long>(ordx) != 0) some_not_divisible = true;
            out.hypothesis = some_not_divisible ? HypothesisStatus::Verified : HypothesisStatus::Violated;
        }

        cd total = 0;
        for (u64 alpha = 0; alpha < Q_; ++alpha) {
            bool defined = true;
            unsigned __int128 lg = unit_log_sum;
            for (const auto& [poly, e] : s) {
                const u64 val = R.eval(poly, alpha);
                if (val == 0) {
                    defined = false;
                    break;
                }
                const long long em = e % static_cast<long long>(Q_ - 1);
                const u64 ue = static_cast<u64>(em < 0 ? em + static_cast<long long>(Q_ - 1) : em);
                lg = (lg + static_cast<unsigned __int128>(F.log(val)) * ue) % (Q_ - 1);
            }
            if (!defined) continue;
            const u64 vlog = static_cast<u64>(lg);
            cd term = roots_[static_cast<u64>((static_cast<unsigned __int128>(x.j) * vlog) % (Q_ - 1))];
            if (hybrid) {
                const auto ua = upsilon::evaluate(F, *u, alpha);
                if (!ua) continue;
                term *= psi(a, *ua);
            }
            total += term;
        }
        const double sq = std::sqrt(static_cast<double>(Q_));
        out.lhs = std::abs(total);
        const long long D = hybrid ? static_cast<long long>(out.data.D1 + out.data.D2 + out.data.D3 + out.data.D4) - 1
                                   : static_cast<long long>(out.data.D1) - 1;
        out.rhs = static_cast<double>(D) * sq;
        out.holds = out.lhs <= out.rhs + kIndicatorTolerance;
        return out;
    }

private:
    void ensure_add_orders() const {
        if (!add_order_.empty()) return;
        // Greedy descent from x^n - 1: the polynomials killing psi form an ideal.
        const auto& fx = ctx_->factored_xn1();
        ff::PolyRing<ff::BaseField> R(ctx_->base());
        std::vector<std::size_t> orders(Q_);
        for (u64 c = 0; c < Q_; ++c) {
            std::vector<unsigned> exps;
            Poly h = ctx_->xn1();
            for (const auto& f : fx.factors) {
                unsigned e = f.multiplicity;
                while (e > 0) {
                    Poly cand = R.div_exact(h, f.poly);
                    if (!kills({c}, cand)) break;
                    h = std::move(cand);
                    --e;
                }
                exps.push_back(e);
            }
            orders[c] = divisor_pos_.at(exps);
        }
        add_order_ = std::move(orders);
    }

    freeness::ContextPtr ctx_;
    u64 Q_ = 0, p_ = 0;
    std::vector<cd> roots_, proots_;
    std::vector<XnDivisor> divisors_;
    std::map<std::vector<unsigned>, std::size_t> divisor_pos_;
    std::vector<std::vector<u64>> basis_conj_;
    mutable std::vector<std::size_t> add_order_;
};

struct WeilInstance {
    PowerProduct v;
    std::optional<upsilon::RationalFn> u;
    MultCharacter chi;
    AddCharacter psi;
};

/// Random instance whose non-degeneracy hypothesis is verified.
inline WeilInstance random_weil_instance(const CharacterContext& cc, std::mt19937_64& rng) {
    const auto& F = cc.field();
    const u64 Q = F.size();
    std::uniform_int_distribution<u64> elem(0, Q - 1), nonzero(1, Q - 1);
    const auto monic = [&](int deg) {
        std::vector<u64> c(static_cast<std::size_t>(deg) + 1);
        for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = elem(rng);
        c[static_cast<std::size_t>(deg)] = 1;
        return Poly(std::move(c));
    };
    while (true) {
        WeilInstance w;
        const int terms = static_cast<int>(rng() % 3) + 1;
        for (int i = 0; i < terms; ++i) {
            const long long e = static_cast<long long>(rng() % (Q - 2)) + 1;
            w.v.terms.emplace_back(monic(static_cast<int>(rng() % 2) + 1), rng() % 2 ? e : -e);
        }
        w.chi = {nonzero(rng) % (Q - 1)};
        if (w.chi.j == 0) continue;
        if (rng() % 2) {
            Poly u1 = monic(static_cast<int>(rng() % 3));
            for (auto& c : u1.c) c = F.mul(c, nonzero(rng));
            const Poly u2 = monic(static_cast<int>(rng() % 2));
            w.u = upsilon::RationalFn::of(F, u1, u2);
            w.psi = {nonzero(rng)};
        }
        const auto r = cc.weil_check(w.v, w.u, w.chi, w.psi);
        if (r.hypothesis == HypothesisStatus::Verified) return w;
    }
}

}  // namespace pnpair::charsums

#endif  // PNPAIR_CHARSUMS_HPP
