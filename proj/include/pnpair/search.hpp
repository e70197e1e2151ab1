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

#ifndef PNPAIR_SEARCH_HPP
#define PNPAIR_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pnpair/freeness.hpp"
#include "pnpair/upsilon.hpp"

namespace pnpair::search {

using ff::Poly;
using ff::u64;

inline constexpr std::size_t kDefaultWitnessCap = 16;

struct CountResult {
    u64 n_f = 0;
    std::vector<u64> witnesses;
    Poly f1, f2;
    u64 e1 = 0, e2 = 0;
    Poly g;
};

/// N_f(e1, e2, g) by full enumeration with the exponentiation-based predicates.
inline CountResult count_nf_direct(const freeness::FreenessContext& ctx, const upsilon::RationalFn& f, u64 e1, u64 e2,
                                   const Poly& g, std::size_t witness_cap = kDefaultWitnessCap,
                                   unsigned threads = freeness::default_threads()) {
    const auto& F = ctx.field();
    const auto fe1 = ctx.factored_order().divisor(from_u64(e1));
    const auto fe2 = ctx.factored_order().divisor(from_u64(e2));
    const auto irr = ctx.irreducibles_of(g);
    const auto mask = upsilon::exceptional_mask(F, f);
    const auto good = [&](u64 alpha) {
        if (mask[alpha]) return false;
        const auto fa = upsilon::evaluate(F, f, alpha);
        if (!fa || *fa == 0) return false;
        return ctx.is_e_free(alpha, fe1) && ctx.is_e_free(*fa, fe2) && ctx.is_g_free_idx(alpha, irr);
    };
    CountResult out;
    out.f1 = f.f1();
    out.f2 = f.f2();
    out.e1 = e1;
    out.e2 = e2;
    out.g = g;
    out.n_f = freeness::parallel_sum<u64>(1, F.size(), threads, [&](u64 lo, u64 hi) {
        u64 c = 0;
        for (u64 a = lo; a < hi; ++a)
            if (good(a)) ++c;
        return c;
    });
    for (u64 a = 1; a < F.size() && out.witnesses.size() < witness_cap; ++a)
        if (good(a)) out.witnesses.push_back(a);
    return out;
}

/// Primitive normal elements in ascending index order.
inline std::vector<u64> primitive_normal_list(const freeness::FreenessContext& ctx) {
    std::vector<u64> out;
    for (u64 a = 1; a < ctx.size(); ++a)
        if (ctx.is_primitive_fast(a) && ctx.is_normal(a)) out.push_back(a);
    return out;
}

struct CounterexampleCheck {
    bool confirmed = false;
    u64 pn_count = 0;
    std::vector<u64> surviving_alphas;
};

/// Confirms that no primitive normal alpha has f(alpha) primitive.
inline CounterexampleCheck verify_counterexample(const freeness::FreenessContext& ctx, const upsilon::RationalFn& f) {
    CounterexampleCheck out;
    for (u64 a = 1; a < ctx.size(); ++a) {
        if (!ctx.is_primitive(a) || !ctx.is_normal(a)) continue;
        ++out.pn_count;
        const auto fa = upsilon::evaluate(ctx.field(), f, a);
        if (fa && *fa != 0 && ctx.is_primitive(*fa)) out.surviving_alphas.push_back(a);
    }
    out.confirmed = out.surviving_alphas.empty();
    return out;
}

enum class Engine { Auto, Interpolate, Enumerate };

inline const char* to_string(Engine e) {
    switch (e) {
        case Engine::Auto: return "auto";
        case Engine::Interpolate: return "interpolate";
        case Engine::Enumerate: return "enumerate";
    }
    return "?";
}

inline Engine parse_engine(const std::string& s) {
    if (s == "auto") return Engine::Auto;
    if (s == "interpolate") return Engine::Interpolate;
    if (s == "enumerate") return Engine::Enumerate;
    throw std::invalid_argument("unknown engine '" + s + "'");
}

enum class Verdict { InB, NotInB, Unresolved };

struct ExhaustiveOptions {
    u64 cap = 50'000'000;
    Engine engine = Engine::Auto;
    std::size_t witness_cap = kDefaultWitnessCap;
};

struct FunctionWitness {
    Poly f1, f2;
    u64 alpha = 0;
};

struct ExhaustiveResult {
    Verdict verdict = Verdict::Unresolved;
    Engine engine = Engine::Auto;
    u64 pn_count = 0;
    u64 work = 0;
    bool complete = false;
    std::vector<FunctionWitness> failing;  // alpha unused
    std::vector<FunctionWitness> samples;  // functions with a primitive normal alpha giving a primitive value
    std::string note;
};

namespace detail {

class Exhaustive {
public:
    Exhaustive(const freeness::FreenessContext& ctx, unsigned m1, unsigned m2, const ExhaustiveOptions& opt)
        : ctx_(ctx), F_(ctx.field()), m1_(m1), m2_(m2), opt_(opt) {
        prim_.assign(F_.size(), 0);
        for (u64 a = 1; a < F_.size(); ++a) prim_[a] = ctx.is_primitive_fast(a) ? 1 : 0;
        for (u64 a = 1; a < F_.size(); ++a)
            if (prim_[a] && ctx.is_normal(a)) pn_.push_back(a);
        for (u64 b = 0; b < F_.size(); ++b)
            if (!prim_[b]) bad_.push_back(b);
    }

    u64 pn_count() const { return pn_.size(); }

    /// Number of label tuples for the interpolation engine, saturating.
    u64 interpolate_cost() const { return sat_pow(bad_.size() + 1, anchors()); }

    /// Number of raw (f1, f2) pairs for the enumeration engine, saturating.
    u64 enumerate_cost() const {
        const u64 Q = F_.size();
        u64 monic = 0;
        for (unsigned d = 0; d <= m2_; ++d) monic = sat_add(monic, sat_pow(Q, d));
        return sat_mul(sat_pow(Q, m1_ + 1) - 1, monic);
    }

    ExhaustiveResult run_interpolate(u64 budget) {
        ExhaustiveResult r = start(Engine::Interpolate);
        budget_ = budget;
        std::vector<std::vector<u64>> rows;
        std::vector<std::size_t> pivots;
        aborted_ = false;
        dfs(0, rows, pivots, r);
        r.work = work_;
        r.complete = !aborted_ && r.failing.size() < opt_.witness_cap;
        finish(r);
        return r;
    }

    ExhaustiveResult run_enumerate(u64 budget) {
        ExhaustiveResult r = start(Engine::Enumerate);
        const u64 Q = F_.size();
        const u64 f1_limit = sat_pow(Q, m1_ + 1);
        ff::PolyRing<ff::IndexedField> R(F_);
        bool stop = false;
        for (unsigned d2 = 0; d2 <= m2_ && !stop; ++d2) {
            const u64 lows = sat_pow(Q, d2);
            for (u64 low = 0; low < lows && !stop; ++low) {
                std::vector<u64> c = ff::poly_from_index(F_, low).c;
                c.resize(d2 + 1, 0);
                c[d2] = 1;
                const Poly f2(std::move(c));
                for (u64 i1 = 1; i1 < f1_limit; ++i1) {
                    if (work_ >= budget) {
                        stop = true;
                        aborted_ = true;
                        break;
                    }
                    ++work_;
                    const Poly f1 = ff::poly_from_index(F_, i1);
                    const auto hit = first_success(f1, f2);
                    if (hit) {
                        if (r.samples.size() < opt_.witness_cap && R.gcd(f1, f2).degree() == 0)
                            r.samples.push_back({f1, f2, *hit});
                        continue;
                    }
                    if (R.gcd(f1, f2).degree() > 0) continue;
                    if (accept_failing(f1, f2, r) && r.failing.size() >= opt_.witness_cap) {
                        stop = true;
                        break;
                    }
                }
            }
        }
        r.work = work_;
        r.complete = !aborted_ && !stop;
        finish(r);
        return r;
    }

private:
    static u64 sat_mul(u64 a, u64 b) {
        if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
        return a * b;
    }
    static u64 sat_add(u64 a, u64 b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }
    static u64 sat_pow(u64 b, unsigned e) {
        u64 r = 1;
        for (unsigned i = 0; i < e; ++i) r = sat_mul(r, b);
        return r;
    }

    unsigned unknowns() const { return m1_ + m2_ + 2; }
    unsigned anchors() const { return static_cast<unsigned>(std::min<u64>(pn_.size(), unknowns() - 1)); }

    ExhaustiveResult start(Engine e) {
        work_ = 0;
        aborted_ = false;
        seen_.clear();
        ExhaustiveResult r;
        r.engine = e;
        r.pn_count = pn_.size();
        return r;
    }

    void finish(ExhaustiveResult& r) const {
        if (!r.failing.empty())
            r.verdict = Verdict::NotInB;
        else if (r.complete)
            r.verdict = Verdict::InB;
        else
            r.verdict = Verdict::Unresolved;
    }

    u64 eval(const Poly& f, u64 a) const {
        u64 acc = 0;
        for (std::size_t i = f.c.size(); i-- > 0;) acc = F_.add(F_.mul(acc, a), f.c[i]);
        return acc;
    }

    /// First primitive normal alpha with f(alpha) primitive.
    std::optional<u64> first_success(const Poly& f1, const Poly& f2) const {
        for (const u64 a : pn_) {
            const u64 den = eval(f2, a);
            if (den == 0) continue;
            const u64 num = eval(f1, a);
            if (num == 0) continue;
            if (prim_[F_.div(num, den)]) return a;
        }
        return std::nullopt;
    }

    bool accept_failing(const Poly& f1, const Poly& f2, ExhaustiveResult& r) {
        upsilon::RationalFn f(F_, f1, f2, m1_, m2_);
        if (!upsilon::in_upsilon(F_, f).member) return false;
        if (!seen_.insert({f.f1().c, f.f2().c}).second) return false;
        r.failing.push_back({f.f1(), f.f2(), 0});
        return true;
    }

    // Row of the linear condition f1(a) - b f2(a) = 0 with b = bad_[li - 1], or f2(a) = 0 when li = 0.
    std::vector<u64> condition(u64 a, std::size_t li) const {
        std::vector<u64> row(unknowns(), 0);
        u64 pw = 1;
        for (unsigned i = 0; i <= std::max(m1_, m2_); ++i) {
            if (i <= m1_ && li > 0) row[i] = pw;
            if (i <= m2_) row[m1_ + 1 + i] = li > 0 ? F_.neg(F_.mul(bad_[li - 1], pw)) : pw;
            pw = F_.mul(pw, a);
        }
        return row;
    }

    // Adds row to a reduced echelon form; returns false when it is dependent.
    bool add_row(std::vector<std::vector<u64>>& rows, std::vector<std::size_t>& pivots, std::vector<u64> row) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const u64 c = row[pivots[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = F_.sub(row[j], F_.mul(c, rows[i][j]));
        }
        std::size_t piv = row.size();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) {
                piv = j;
                break;
            }
        if (piv == row.size()) return false;
        const u64 inv = F_.inv(row[piv]);
        for (auto& v : row) v = F_.mul(v, inv);
        for (auto& other : rows) {
            const u64 c = other[piv];
            if (c == 0) continue;
            for (std::size_t j = 0; j < row.size(); ++j) other[j] = F_.sub(other[j], F_.mul(c, row[j]));
        }
        rows.push_back(std::move(row));
        pivots.push_back(piv);
        return true;
    }

    void dfs(unsigned depth, std::vector<std::vector<u64>>& rows, std::vector<std::size_t>& pivots, ExhaustiveResult& r) {
        if (aborted_ || r.failing.size() >= opt_.witness_cap) return;
        if (depth == anchors()) {
            leaf(rows, pivots, r);
            return;
        }
        const u64 a = pn_[depth];
        for (std::size_t li = 0; li <= bad_.size(); ++li) {
            auto rows2 = rows;
            auto piv2 = pivots;
            add_row(rows2, piv2, condition(a, li));
            dfs(depth + 1, rows2, piv2, r);
            if (aborted_ || r.failing.size() >= opt_.witness_cap) return;
        }
    }

    void leaf(const std::vector<std::vector<u64>>& rows, const std::vector<std::size_t>& pivots, ExhaustiveResult& r) {
        if (++work_ > budget_) {
            aborted_ = true;
            return;
        }
        const std::size_t D = unknowns();
        std::vector<char> is_pivot(D, 0);
        for (auto p : pivots) is_pivot[p] = 1;
        std::vector<std::size_t> free_cols;
        for (std::size_t j = 0; j < D; ++j)
            if (!is_pivot[j]) free_cols.push_back(j);
        // Projective points of the null space: first nonzero free coordinate equal to 1.
        const u64 Q = F_.size();
        const std::size_t dim = free_cols.size();
        std::vector<u64> lam(dim, 0);
        for (std::size_t lead = 0; lead < dim; ++lead) {
            const std::size_t tail = dim - lead - 1;
            const u64 count = sat_pow(Q, static_cast<unsigned>(tail));
            for (u64 t = 0; t < count; ++t) {
                if (++work_ > budget_) {
                    aborted_ = true;
                    return;
                }
                std::fill(lam.begin(), lam.end(), 0);
                lam[lead] = 1;
                u64 rest = t;
                for (std::size_t j = lead + 1; j < dim; ++j, rest /= Q) lam[j] = rest % Q;
                std::vector<u64> u(D, 0);
                for (std::size_t j = 0; j < dim; ++j) u[free_cols[j]] = lam[j];
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    u64 v = 0;
                    for (std::size_t j = 0; j < dim; ++j)
                        if (lam[j] != 0) v = F_.sub(v, F_.mul(rows[i][free_cols[j]], lam[j]));
                    u[pivots[i]] = v;
                }
                consider(u, r);
                if (r.failing.size() >= opt_.witness_cap) return;
            }
        }
    }

    void consider(const std::vector<u64>& u, ExhaustiveResult& r) {
        Poly f1(std::vector<u64>(u.begin(), u.begin() + m1_ + 1));
        Poly f2(std::vector<u64>(u.begin() + m1_ + 1, u.end()));
        if (f1.is_zero() || f2.is_zero()) return;
        ff::PolyRing<ff::IndexedField> R(F_);
        const u64 s = F_.inv(f2.lead());
        f1 = R.scale(f1, s);
        f2 = R.scale(f2, s);
        const Poly g = R.gcd(f1, f2);
        if (g.degree() > 0) {
            f1 = R.div_exact(f1, g);
            f2 = R.div_exact(f2, g);
        }
        if (first_success(f1, f2)) return;
        accept_failing(f1, f2, r);
    }

    const freeness::FreenessContext& ctx_;
    const ff::IndexedField& F_;
    unsigned m1_, m2_;
    ExhaustiveOptions opt_;
    std::vector<char> prim_;
    std::vector<u64> pn_, bad_;
    std::set<std::pair<std::vector<u64>, std::vector<u64>>> seen_;
    u64 work_ = 0, budget_ = 0;
    bool aborted_ = false;
};

}  // namespace detail

/// Decides whether every admissible f has a primitive normal alpha with f(alpha) primitive.
///
/// The interpolation engine fixes, for the first m1+m2+1 primitive normal
/// elements, which non-primitive value (or a pole) f takes there, solves the
/// resulting linear system for the coefficients and checks each solution on
/// all primitive normal elements. Every failing function arises this way, so a
/// completed run is exhaustive. The enumeration engine walks raw (f1, f2)
/// pairs with f2 = 1 first and is used to find counterexamples early.
inline ExhaustiveResult exhaustive_search(const freeness::FreenessContext& ctx, unsigned m1, unsigned m2,
                                          const ExhaustiveOptions& opt = {}) {
    detail::Exhaustive ex(ctx, m1, m2, opt);
    switch (opt.engine) {
        case Engine::Interpolate: return ex.run_interpolate(opt.cap);
        case Engine::Enumerate: return ex.run_enumerate(opt.cap);
        case Engine::Auto: break;
    }
    const u64 ci = ex.interpolate_cost(), ce = ex.enumerate_cost();
    ExhaustiveResult r;
    if (ci <= ce && ci <= opt.cap) {
        r = ex.run_interpolate(UINT64_MAX);
    } else if (ce <= opt.cap) {
        r = ex.run_enumerate(UINT64_MAX);
    } else {
        r = ex.run_enumerate(opt.cap);
        if (r.verdict == Verdict::Unresolved)
            r.note = "search space of " + std::to_string(std::min(ci, ce)) + " exceeds cap " + std::to_string(opt.cap);
    }
    return r;
}

}  // namespace pnpair::search

#endif  // PNPAIR_SEARCH_HPP
