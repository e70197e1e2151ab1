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

#ifndef PNPAIR_CERTIFY_HPP
#define PNPAIR_CERTIFY_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pnpair/ffpoly/xn1.hpp"
#include "pnpair/freeness.hpp"
#include "pnpair/ntheory.hpp"
#include "pnpair/search.hpp"
#include "pnpair/text.hpp"

namespace pnpair::certify {

using ff::Poly;
using ff::u64;
using ntheory::FactoredInteger;

// ---------------------------------------------------------------- pair data

/// q^n - 1 factored and the degree pattern of x^n - 1 over F_q.
struct PairData {
    u64 q = 0, p = 0;
    unsigned k = 0, n = 0;
    FactoredInteger order;
    ff::XnPattern pattern;

    BigInt Q() const { return big_pow(from_u64(q), n); }
};

inline PairData pair_data(u64 q, unsigned n, ntheory::Millis budget = ntheory::default_budget()) {
    const auto pp = ntheory::prime_power(q);
    if (!pp) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    if (n == 0) throw std::invalid_argument("n must be positive");
    PairData d;
    d.q = q;
    d.p = pp->prime;
    d.k = pp->exponent;
    d.n = n;
    d.order = ntheory::cyclotomic_split(q, n, budget);
    d.pattern = ff::xn_pattern(q, n);
    return d;
}

// ---------------------------------------------------------------- recipes

/// Choice of the integer l | q^n - 1 used in the sieve.
struct EllSpec {
    enum class Kind { Full, Gcd, Explicit };
    Kind kind = Kind::Full;
    BigInt value = 0;

    static EllSpec full() { return {}; }
    static EllSpec gcd(const BigInt& m) { return {Kind::Gcd, m}; }
    static EllSpec exact(const BigInt& l) { return {Kind::Explicit, l}; }

    /// "full", "gcd210", or a plain integer.
    static EllSpec parse(const std::string& s) {
        if (s == "full") return full();
        if (s.rfind("gcd", 0) == 0) return gcd(from_u64(text::parse_u64(s.substr(3), "gcd modulus")));
        return exact(from_u64(text::parse_u64(s, "ell")));
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Full: return "full";
            case Kind::Gcd: return "gcd" + value.get_str();
            case Kind::Explicit: return value.get_str();
        }
        return "?";
    }

    FactoredInteger resolve(const FactoredInteger& order) const {
        switch (kind) {
            case Kind::Full: return order;
            case Kind::Gcd: return order.gcd_with(value);
            case Kind::Explicit:
                if (value < 1 || order.value() % value != 0)
                    throw std::invalid_argument("ell = " + value.get_str() + " does not divide q^n - 1");
                return order.divisor(value);
        }
        throw std::logic_error("EllSpec");
    }
};

/// Choice of the monic g | x^n - 1 used in the sieve.
struct GSpec {
    enum class Kind { One, Full, Linear, SmallDegree, Explicit };
    Kind kind = Kind::One;
    Poly poly;  // Explicit: coefficients are F_q element indices

    static GSpec one() { return {}; }
    static GSpec full() { return {Kind::Full, {}}; }
    static GSpec linear() { return {Kind::Linear, {}}; }
    static GSpec small_degree() { return {Kind::SmallDegree, {}}; }
    static GSpec exact(Poly g) { return {Kind::Explicit, std::move(g)}; }

    /// "1", "full", "linear", "smalldeg", or a polynomial "[c0,c1,...]".
    static GSpec parse(const std::string& s) {
        if (s == "1") return one();
        if (s == "full") return full();
        if (s == "linear") return linear();
        if (s == "smalldeg") return small_degree();
        if (!s.empty() && s.front() == '[') return exact(text::parse_poly(s));
        throw text::ParseError("unknown g recipe '" + s + "'");
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::One: return "1";
            case Kind::Full: return "full";
            case Kind::Linear: return "linear";
            case Kind::SmallDegree: return "smalldeg";
            case Kind::Explicit: return text::format_poly(poly);
        }
        return "?";
    }
};

/// Degrees of the distinct irreducible factors of x^n - 1 inside and outside g.
struct GChoice {
    std::vector<u64> included, excluded;
};

inline GChoice resolve_g(const PairData& d, const GSpec& spec) {
    GChoice out;
    if (spec.kind == GSpec::Kind::Explicit) {
        const ff::BaseField fq(d.p, d.k);
        ff::PolyRing<ff::BaseField> R(fq);
        const Poly& g = spec.poly;
        if (g.is_zero() || g.lead() != 1) throw std::invalid_argument("g must be monic");
        const Poly xn1 = ff::xn_minus_1(fq, d.n);
        if (!R.divides(g, xn1)) throw std::invalid_argument("g does not divide x^n - 1");
        for (const auto& f : ff::factor_poly(fq, xn1).factors)
            (R.divides(f.poly, g) ? out.included : out.excluded).push_back(static_cast<u64>(f.poly.degree()));
        return out;
    }
    for (const u64 deg : d.pattern.degrees) {
        bool in = false;
        switch (spec.kind) {
            case GSpec::Kind::One: in = false; break;
            case GSpec::Kind::Full: in = true; break;
            case GSpec::Kind::Linear: in = deg == 1; break;
            case GSpec::Kind::SmallDegree: {
                // q^deg <= 2n
                BigInt qd = big_pow(from_u64(d.q), static_cast<unsigned long>(deg));
                in = qd <= 2 * static_cast<long>(d.n);
                break;
            }
            case GSpec::Kind::Explicit: break;
        }
        (in ? out.included : out.excluded).push_back(deg);
    }
    return out;
}

// ---------------------------------------------------------------- conditions

inline BigRational q_power_inverse(u64 q, u64 deg) { return BigRational(1, big_pow(from_u64(q), static_cast<unsigned long>(deg))); }

/// q^(n/2) as a double, for display.
inline double half_power(const PairData& d) { return std::pow(static_cast<double>(d.q), d.n / 2.0); }

/// Exact test of q^(n/2) >= rhs for rational rhs >= 0.
inline bool half_power_at_least(const PairData& d, const BigRational& rhs) {
    if (rhs <= 0) return true;
    return BigRational(d.Q()) >= rhs * rhs;
}

struct CorollaryReport {
    BigInt W = 0, Wq = 0;
    double condition_lhs = 0, condition_rhs = 0;
    bool holds = false;
};

/// q^(n/2) >= (m1 + m2 + 1) W(q^n - 1)^2 W_q(x^n - 1).
inline CorollaryReport corollary_condition(const PairData& d, unsigned m1, unsigned m2) {
    d.order.require_complete();
    CorollaryReport r;
    r.W = ntheory::W(d.order);
    r.Wq = d.pattern.Wq();
    const BigRational rhs(BigInt(m1 + m2 + 1) * r.W * r.W * r.Wq);
    r.condition_lhs = half_power(d);
    r.condition_rhs = rhs.get_d();
    r.holds = half_power_at_least(d, rhs);
    return r;
}

struct SieveReport {
    std::string ell_spec, g_spec;
    FactoredInteger ell;
    std::vector<BigInt> sieve_primes;
    std::vector<u64> sieve_degrees;
    unsigned r = 0, s = 0;
    BigRational delta = 0, Delta = 0;
    BigInt W_ell = 0, Wq_g = 0;
    double condition_lhs = 0, condition_rhs = 0;
    bool holds = false;
};

/// delta = 1 - 2 sum 1/p_i - sum q^-deg P_j over the primes of q^n - 1 not dividing l
/// and the irreducibles of x^n - 1 not dividing g; Delta = (2r + s - 1)/delta + 2;
/// holds when delta > 0 and q^(n/2) >= (m1 + m2 + 1) W(l)^2 W_q(g) Delta.
inline SieveReport sieve_condition(const PairData& d, unsigned m1, unsigned m2, const EllSpec& ell_spec,
                                   const GSpec& g_spec) {
    d.order.require_complete();
    SieveReport rep;
    rep.ell_spec = ell_spec.to_string();
    rep.g_spec = g_spec.to_string();
    rep.ell = ell_spec.resolve(d.order);
    const GChoice g = resolve_g(d, g_spec);
    BigRational delta = 1;
    for (const auto& pp : d.order.factors()) {
        if (rep.ell.has_prime(pp.prime)) continue;
        rep.sieve_primes.push_back(pp.prime);
        delta -= BigRational(2, pp.prime);
    }
    for (const u64 deg : g.excluded) {
        rep.sieve_degrees.push_back(deg);
        delta -= q_power_inverse(d.q, deg);
    }
    delta.canonicalize();
    rep.r = static_cast<unsigned>(rep.sieve_primes.size());
    rep.s = static_cast<unsigned>(rep.sieve_degrees.size());
    rep.delta = delta;
    rep.W_ell = ntheory::W(rep.ell);
    rep.Wq_g = big_pow(BigInt(2), static_cast<unsigned long>(g.included.size()));
    rep.condition_lhs = half_power(d);
    if (delta <= 0) {
        rep.condition_rhs = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.Delta = BigRational(BigInt(2 * static_cast<long>(rep.r) + static_cast<long>(rep.s) - 1)) / delta + 2;
    rep.Delta.canonicalize();
    const BigRational rhs = BigRational(BigInt(m1 + m2 + 1) * rep.W_ell * rep.W_ell * rep.Wq_g) * rep.Delta;
    rep.condition_rhs = rhs.get_d();
    rep.holds = half_power_at_least(d, rhs);
    return rep;
}

struct TheoremBound {
    long double lower_bound = 0;
    bool sufficient = false;
};

/// Lower bound for N_f(e1, e2, g) over all f with the given degree caps.
inline TheoremBound theorem_bound(const BigInt& Q, unsigned m1, unsigned m2, const FactoredInteger& e1,
                                  const FactoredInteger& e2, const BigInt& Phi_g, const BigInt& N_g, const BigInt& Wq_g) {
    const BigInt M = m1 + m2 + 1;
    const BigInt W = ntheory::W(e1) * ntheory::W(e2) * Wq_g;
    const BigRational factor = BigRational(ntheory::euler_phi(e1) * ntheory::euler_phi(e2) * Phi_g, e1.value() * e2.value() * N_g);
    const long double Ql = Q.get_d();
    const long double inner = Ql - M.get_d() - M.get_d() * std::sqrt(Ql) * (W.get_d() - 1);
    TheoremBound tb;
    tb.lower_bound = static_cast<long double>(factor.get_d()) * inner;
    const BigInt rhs = M * W;
    tb.sufficient = Q >= rhs * rhs;
    return tb;
}

inline TheoremBound theorem_bound(const freeness::FreenessContext& ctx, unsigned m1, unsigned m2, u64 e1, u64 e2,
                                  const freeness::XnDivisor& g) {
    const auto& order = ctx.factored_order();
    return theorem_bound(from_u64(ctx.size()), m1, m2, order.divisor(from_u64(e1)), order.divisor(from_u64(e2)),
                         ctx.Phi(g), ctx.Norm(g), ctx.Wq(g));
}

struct SieveIdentity {
    long long lhs = 0, rhs = 0;
    unsigned r = 0, s = 0;
    bool holds = false;
};

/// Checks the sieve inequality with exact counts:
/// N(Q-1, Q-1, x^n-1) >= sum N(p l, l, g) + sum N(l, p l, g) + sum N(l, l, P g) - (2r + s - 1) N(l, l, g).
inline SieveIdentity sieve_identity_check(const freeness::FreenessContext& ctx, const upsilon::RationalFn& f, u64 ell,
                                          const Poly& g) {
    ff::PolyRing<ff::BaseField> R(ctx.base());
    const u64 Qm1 = ctx.size() - 1;
    if (ell == 0 || Qm1 % ell != 0) throw std::invalid_argument("ell must divide q^n - 1");
    const auto count = [&](u64 e1, u64 e2, const Poly& gg) {
        return static_cast<long long>(search::count_nf_direct(ctx, f, e1, e2, gg, 0).n_f);
    };
    SieveIdentity out;
    const auto fell = ctx.factored_order().divisor(from_u64(ell));
    long long sum = 0;
    for (const auto& pp : ctx.factored_order().factors()) {
        if (fell.has_prime(pp.prime)) continue;
        ++out.r;
        const u64 pl = to_u64(pp.prime) * ell;
        sum += count(pl, ell, g) + count(ell, pl, g);
    }
    const auto gd = ctx.divisor_of(g);
    for (std::size_t i = 0; i < gd.exps.size(); ++i) {
        if (gd.exps[i] > 0) continue;
        ++out.s;
        sum += count(ell, ell, R.mul(gd.poly, ctx.factored_xn1().factors[i].poly));
    }
    sum -= (2 * static_cast<long long>(out.r) + static_cast<long long>(out.s) - 1) * count(ell, ell, gd.poly);
    out.lhs = count(Qm1, Qm1, ctx.xn1());
    out.rhs = sum;
    out.holds = out.lhs >= out.rhs;
    return out;
}

// ---------------------------------------------------------------- thresholds

/// q^(n/2) >= C A_t^2 q^(2w/t) 2^(a n + b), with C = m1 + m2 + 1 unless overridden and w = n unless overridden.
enum class Regime { Generic, LenstraQ2, LenstraQ3, LenstraQ4, LenstraQ5, WqCap34, Custom };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Generic: return "generic";
        case Regime::LenstraQ2: return "lenstra-q2";
        case Regime::LenstraQ3: return "lenstra-q3";
        case Regime::LenstraQ4: return "lenstra-q4";
        case Regime::LenstraQ5: return "lenstra-q5";
        case Regime::WqCap34: return "wq-cap-3/4";
        case Regime::Custom: return "custom";
    }
    return "?";
}

inline Regime parse_regime(const std::string& s) {
    for (const Regime r : {Regime::Generic, Regime::LenstraQ2, Regime::LenstraQ3, Regime::LenstraQ4, Regime::LenstraQ5,
                           Regime::WqCap34, Regime::Custom})
        if (s == to_string(r)) return r;
    throw std::invalid_argument("unknown regime '" + s + "'");
}

struct ThresholdForm {
    std::optional<long double> constant;
    long double a = 1, b = 0;
    std::optional<long double> w;
};

inline ThresholdForm regime_form(Regime r) {
    switch (r) {
        case Regime::Generic: return {std::nullopt, 1, 0, std::nullopt};
        case Regime::LenstraQ2: return {std::nullopt, 0.25L, 1.25L, std::nullopt};
        case Regime::LenstraQ3: return {std::nullopt, 1.0L / 3, 4.0L / 3, std::nullopt};
        case Regime::LenstraQ4: return {std::nullopt, 1.0L / 3, 2, std::nullopt};
        case Regime::LenstraQ5: return {std::nullopt, 1.0L / 3, 6, std::nullopt};
        case Regime::WqCap34: return {std::nullopt, 0.75L, 0, std::nullopt};
        case Regime::Custom: return {};
    }
    return {};
}

inline std::optional<u64> regime_q(Regime r) {
    switch (r) {
        case Regime::LenstraQ2: return 2;
        case Regime::LenstraQ3: return 3;
        case Regime::LenstraQ4: return 4;
        case Regime::LenstraQ5: return 5;
        default: return std::nullopt;
    }
}

/// Smallest real q with the threshold inequality for fixed n.
inline long double threshold_q(unsigned n, unsigned m1, unsigned m2, double t, Regime regime,
                               const ThresholdForm& custom = {}, std::optional<u64> excluded_prime = std::nullopt) {
    if (regime_q(regime))
        throw std::invalid_argument(std::string("regime ") + to_string(regime) + " fixes q; use threshold_n");
    const ThresholdForm f = regime == Regime::Custom ? custom : regime_form(regime);
    const long double C = f.constant.value_or(static_cast<long double>(m1 + m2 + 1));
    const long double w = f.w.value_or(static_cast<long double>(n));
    const long double exponent = n / 2.0L - 2 * w / t;
    if (!(exponent > 0)) throw std::domain_error("t outside the validity region for this n");
    const auto A = ntheory::a_t_bound(t, excluded_prime);
    const long double rhs = std::log(C) + 2 * A.log_value + (f.a * n + f.b) * std::log(2.0L);
    return std::exp(rhs / exponent);
}

/// Smallest real n with the threshold inequality for fixed q.
inline long double threshold_n(u64 q, unsigned m1, unsigned m2, double t, Regime regime,
                               std::optional<u64> excluded_prime = std::nullopt) {
    if (regime == Regime::Custom) throw std::invalid_argument("custom regime is defined for threshold_q only");
    if (const auto rq = regime_q(regime); rq && *rq != q)
        throw std::invalid_argument(std::string("regime ") + to_string(regime) + " requires q = " + std::to_string(*rq));
    const ThresholdForm f = regime_form(regime);
    const long double lq = std::log(static_cast<long double>(q));
    const long double den = (0.5L - 2.0L / t) * lq - f.a * std::log(2.0L);
    if (!(den > 0)) throw std::domain_error("t outside the validity region for this q");
    const auto A = ntheory::a_t_bound(t, excluded_prime);
    const long double num = std::log(static_cast<long double>(m1 + m2 + 1)) + 2 * A.log_value + f.b * std::log(2.0L);
    return num / den;
}

struct WorstCaseSieve {
    unsigned r_max = 0;
    BigRational S = 0;
    BigRational delta_lower = 0;
    BigRational Delta_upper = 0;
};

/// Uniform sieve bounds when q^n - 1's sieving primes lie in a class whose
/// first r primes multiply to at most `product_bound`, x^n - 1 has at most
/// `factor_cap` irreducibles of degree >= 1, and q >= q_min.
inline WorstCaseSieve worst_case_sieve(const BigInt& product_bound, ntheory::PrimeClass cls, unsigned factor_cap,
                                       u64 q_min) {
    const auto cap = ntheory::prime_class_cap(product_bound, cls);
    WorstCaseSieve w;
    w.r_max = cap.r_max;
    w.S = cap.S;
    w.delta_lower = 1 - 2 * cap.S - BigRational(factor_cap, from_u64(q_min));
    w.delta_lower.canonicalize();
    if (w.delta_lower > 0) {
        w.Delta_upper = BigRational(2 * w.r_max + factor_cap - 1) / w.delta_lower + 2;
        w.Delta_upper.canonicalize();
    }
    return w;
}

// ---------------------------------------------------------------- small fields

struct NoBbResult {
    u64 N = 0;
    bool fires = false;
};

/// Fires when the number of primitive normal elements is at most m1 + m2 + 1.
inline NoBbResult decide_noBb(const freeness::FreenessContext& ctx, unsigned m1, unsigned m2) {
    if (ctx.n() < 3) throw std::invalid_argument("decide_noBb requires n >= 3");
    NoBbResult r;
    r.N = freeness::count_primitive_normal(ctx);
    r.fires = r.N <= m1 + m2 + 1;
    return r;
}

struct YesBbResult {
    u64 N = 0;
    BigInt phi = 0;
    bool fires = false;
    bool general_q = false;
};

/// Fires when N/max(m1, m2) + phi(q^n - 1) > q^n + 1, compared as integers.
inline YesBbResult decide_yesBb(const freeness::FreenessContext& ctx, unsigned m1, unsigned m2, bool allow_general_q = false) {
    if (ctx.n() < 3) throw std::invalid_argument("decide_yesBb requires n >= 3");
    const bool even = ctx.field().p() == 2;
    if (!even && !allow_general_q) throw std::invalid_argument("decide_yesBb is stated for q a power of 2");
    YesBbResult r;
    r.general_q = !even;
    r.N = freeness::count_primitive_normal(ctx);
    r.phi = ntheory::euler_phi(ctx.factored_order());
    const BigInt m = std::max(m1, m2);
    const BigInt Q = from_u64(ctx.size());
    r.fires = from_u64(r.N) + m * r.phi > m * (Q + 1);
    return r;
}

// ---------------------------------------------------------------- classification

enum class Status { ProvedInB, ProvedNotInB, Unresolved, Indeterminate };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::ProvedInB: return "ProvedInB";
        case Status::ProvedNotInB: return "ProvedNotInB";
        case Status::Unresolved: return "Unresolved";
        case Status::Indeterminate: return "Indeterminate";
    }
    return "?";
}

inline Status parse_status(const std::string& s) {
    for (const Status st : {Status::ProvedInB, Status::ProvedNotInB, Status::Unresolved, Status::Indeterminate})
        if (s == to_string(st)) return st;
    throw std::invalid_argument("unknown status '" + s + "'");
}

struct Rule {
    enum class Kind { Corollary, Sieve, NoBb, YesBb, Exhaustive };
    Kind kind = Kind::Corollary;
    EllSpec ell;
    GSpec g;

    static Rule sieve(EllSpec e, GSpec g) { return {Kind::Sieve, std::move(e), std::move(g)}; }

    /// "corollary", "sieve:<ell>/<g>", "nobb", "yesbb", "exhaustive".
    static Rule parse(const std::string& s) {
        if (s == "corollary") return {Kind::Corollary, {}, {}};
        if (s == "nobb") return {Kind::NoBb, {}, {}};
        if (s == "yesbb") return {Kind::YesBb, {}, {}};
        if (s == "exhaustive") return {Kind::Exhaustive, {}, {}};
        if (s.rfind("sieve:", 0) == 0) {
            const std::string body = s.substr(6);
            const auto slash = body.find('/');
            if (slash == std::string::npos) throw text::ParseError("sieve rule needs <ell>/<g>: '" + s + "'");
            return sieve(EllSpec::parse(body.substr(0, slash)), GSpec::parse(body.substr(slash + 1)));
        }
        throw text::ParseError("unknown rule '" + s + "'");
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Corollary: return "corollary";
            case Kind::Sieve: return "sieve:" + ell.to_string() + "/" + g.to_string();
            case Kind::NoBb: return "nobb";
            case Kind::YesBb: return "yesbb";
            case Kind::Exhaustive: return "exhaustive";
        }
        return "?";
    }
};

inline std::vector<Rule> parse_strategy(const std::string& s) {
    std::vector<Rule> out;
    std::string item;
    int depth = 0;
    const auto flush = [&] {
        if (!item.empty()) out.push_back(Rule::parse(item));
        item.clear();
    };
    // commas inside an explicit polynomial "[..]" belong to the rule
    for (const char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) flush();
        else item.push_back(c);
    }
    flush();
    if (depth != 0) throw text::ParseError("unbalanced brackets in rule list '" + s + "'");
    if (out.empty()) throw text::ParseError("empty rule list");
    return out;
}

/// Corollary first, then sieves with shrinking l and growing g, then the small-field rules.
inline std::vector<Rule> default_strategy() {
    return parse_strategy(
        "corollary,sieve:gcd210/1,sieve:gcd210/linear,sieve:gcd30/1,sieve:gcd30/linear,sieve:gcd30/smalldeg,"
        "sieve:gcd6/1,sieve:gcd6/linear,sieve:gcd2/1,nobb,yesbb,exhaustive");
}

struct Certificate {
    Rule rule;
    std::optional<CorollaryReport> corollary;
    std::optional<SieveReport> sieve;
    std::optional<NoBbResult> nobb;
    std::optional<YesBbResult> yesbb;
    std::optional<search::ExhaustiveResult> exhaustive;
};

struct PairClassification {
    u64 q = 0;
    unsigned n = 0, m1 = 0, m2 = 0;
    Status status = Status::Unresolved;
    std::optional<Certificate> certificate;
    std::optional<SieveReport> last_sieve;  // most recent sieve attempt, decisive or not
    std::vector<std::string> attempted;
    std::vector<std::string> notes;
    double millis = 0;
};

struct ClassifyOptions {
    ntheory::Millis budget = ntheory::default_budget();
    u64 field_cap = ff::enumeration_cap();
    search::ExhaustiveOptions exhaustive;
    bool allow_general_q = false;
};

/// Applies the rules in order and stops at the first decisive one.
inline PairClassification classify_pair(u64 q, unsigned n, unsigned m1, unsigned m2, const std::vector<Rule>& strategy,
                                        const ClassifyOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    PairClassification out;
    out.q = q;
    out.n = n;
    out.m1 = m1;
    out.m2 = m2;
    const PairData d = pair_data(q, n, opt.budget);
    bool indeterminate = false;
    std::shared_ptr<const freeness::FreenessContext> ctx;
    bool ctx_failed = false;
    const auto small_field = [&]() -> const freeness::FreenessContext* {
        if (ctx) return ctx.get();
        if (ctx_failed) return nullptr;
        if (d.Q() > from_u64(opt.field_cap)) {
            ctx_failed = true;
            out.notes.push_back("field of size " + d.Q().get_str() + " exceeds the enumeration cap");
            return nullptr;
        }
        ctx = freeness::FreenessContext::make(d.p, d.k, n);
        return ctx.get();
    };
    const auto decide = [&](Status st, Certificate c) {
        out.status = st;
        out.certificate = std::move(c);
    };
    for (const Rule& rule : strategy) {
        out.attempted.push_back(rule.to_string());
        try {
            switch (rule.kind) {
                case Rule::Kind::Corollary: {
                    if (!d.order.is_complete()) {
                        indeterminate = true;
                        break;
                    }
                    auto rep = corollary_condition(d, m1, m2);
                    if (rep.holds) decide(Status::ProvedInB, {rule, rep, {}, {}, {}, {}});
                    break;
                }
                case Rule::Kind::Sieve: {
                    if (!d.order.is_complete()) {
                        indeterminate = true;
                        break;
                    }
                    auto rep = sieve_condition(d, m1, m2, rule.ell, rule.g);
                    out.last_sieve = rep;
                    if (rep.holds) decide(Status::ProvedInB, {rule, {}, rep, {}, {}, {}});
                    break;
                }
                case Rule::Kind::NoBb: {
                    if (n < 3) break;
                    const auto* c = small_field();
                    if (!c) break;
                    auto r = decide_noBb(*c, m1, m2);
                    if (r.fires) decide(Status::ProvedNotInB, {rule, {}, {}, r, {}, {}});
                    break;
                }
                case Rule::Kind::YesBb: {
                    if (n < 3 || (d.p != 2 && !opt.allow_general_q)) break;
                    const auto* c = small_field();
                    if (!c) break;
                    auto r = decide_yesBb(*c, m1, m2, opt.allow_general_q);
                    if (r.fires) decide(Status::ProvedInB, {rule, {}, {}, {}, r, {}});
                    break;
                }
                case Rule::Kind::Exhaustive: {
                    const auto* c = small_field();
                    if (!c) break;
                    auto r = search::exhaustive_search(*c, m1, m2, opt.exhaustive);
                    if (r.verdict == search::Verdict::InB) decide(Status::ProvedInB, {rule, {}, {}, {}, {}, r});
                    else if (r.verdict == search::Verdict::NotInB) decide(Status::ProvedNotInB, {rule, {}, {}, {}, {}, r});
                    else if (!r.note.empty()) out.notes.push_back(r.note);
                    break;
                }
            }
        } catch (const ntheory::IncompleteFactorization&) {
            indeterminate = true;
        } catch (const std::invalid_argument& e) {
            out.notes.push_back(rule.to_string() + ": " + e.what());
        } catch (const ff::CapExceeded& e) {
            out.notes.push_back(rule.to_string() + ": " + e.what());
        }
        if (out.certificate) break;
    }
    if (!out.certificate) {
        out.status = indeterminate ? Status::Indeterminate : Status::Unresolved;
        if (indeterminate) out.notes.push_back("factorization of q^n - 1 incomplete: " + d.order.to_string());
    }
    out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline PairClassification classify_pair(u64 q, unsigned n, unsigned m1, unsigned m2) {
    return classify_pair(q, n, m1, m2, default_strategy());
}

/// Re-runs the certificate's rule alone and checks that it reaches the same verdict.
inline bool replay(u64 q, unsigned n, unsigned m1, unsigned m2, const Rule& rule, Status expected,
                   const ClassifyOptions& opt = {}) {
    return classify_pair(q, n, m1, m2, {rule}, opt).status == expected;
}

inline bool replay(const PairClassification& c, const ClassifyOptions& opt = {}) {
    if (!c.certificate) return false;
    return replay(c.q, c.n, c.m1, c.m2, c.certificate->rule, c.status, opt);
}

/// Classifies every (q, n) with q a prime power in [q_lo, q_hi] and n in [n_lo, n_hi]; results sorted by (q, n).
inline std::vector<PairClassification> scan(u64 q_lo, u64 q_hi, unsigned n_lo, unsigned n_hi, unsigned m1, unsigned m2,
                                            const std::vector<Rule>& strategy, const ClassifyOptions& opt = {},
                                            unsigned threads = freeness::default_threads()) {
    std::vector<std::pair<u64, unsigned>> jobs;
    for (const u64 q : ntheory::prime_powers_in(std::max<u64>(q_lo, 2), q_hi))
        for (unsigned n = n_lo; n <= n_hi; ++n) jobs.emplace_back(q, n);
    std::vector<PairClassification> out(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
            out[i] = classify_pair(jobs[i].first, jobs[i].second, m1, m2, strategy, opt);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace pnpair::certify

#endif  // PNPAIR_CERTIFY_HPP
