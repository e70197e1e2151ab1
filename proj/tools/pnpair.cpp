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

// pnpair command-line driver. One JSON object per line on stdout (or
// --output), errors as JSON on stderr. Exit 0 ok, 2 indeterminate, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnpair.hpp"

namespace {

using namespace pnpair;
using nlohmann::json;
using u64 = std::uint64_t;

struct Globals {
    unsigned threads = freeness::default_threads();
    long long budget_ms = -1;
    u64 cap = 0;
    std::string format = "json";
    std::string output;
    bool timings = false;
};

class Emitter {
public:
    explicit Emitter(const Globals& g) : g_(g) {
        if (!g.output.empty()) {
            file_ = std::make_unique<std::ofstream>(g.output, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open " + g.output);
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }
    void line(const json& j) { out() << j.dump() << '\n'; }
    void csv_header() { out() << report::kCsvHeader << '\n'; }
    void csv(const std::string& row) { out() << row << '\n'; }
    bool is_csv() const { return g_.format == "csv"; }

private:
    const Globals& g_;
    std::unique_ptr<std::ofstream> file_;
};

struct Indeterminate {};

ntheory::Millis budget(const Globals& g) {
    return g.budget_ms >= 0 ? ntheory::Millis(g.budget_ms) : ntheory::default_budget();
}

u64 cap(const Globals& g) { return g.cap ? g.cap : ff::enumeration_cap(); }

freeness::ContextPtr context(const Globals& g, const text::FieldSpec& f) {
    return std::make_shared<const freeness::FreenessContext>(ff::make_indexed(f.p, f.k, f.n, cap(g)));
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty()) throw text::ParseError("not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

json poly_json(const ff::Poly& p) { return json::parse(text::format_poly(p)); }

// ------------------------------------------------------------- commands

void cmd_factor(const Globals& g, Emitter& em, const std::string& value, const std::string& cyclo) {
    ntheory::FactoredInteger f;
    if (!cyclo.empty()) {
        const auto [q, n] = text::parse_pair(cyclo);
        f = ntheory::cyclotomic_split(q, n, budget(g));
    } else {
        if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
            throw text::ParseError("factor needs a positive integer or --cyclotomic q,n");
        f = ntheory::factor_integer(BigInt(value), budget(g));
    }
    json j = report::factored(f);
    if (f.is_complete()) {
        j["phi"] = report::big(ntheory::euler_phi(f));
        j["mu"] = ntheory::moebius(f);
        j["omega"] = ntheory::omega(f);
        j["W"] = report::big(ntheory::W(f));
    }
    em.line(j);
    if (!f.is_complete()) throw Indeterminate{};
}

void cmd_field_info(const Globals& g, Emitter& em, const text::FieldSpec& fs) {
    const auto tower = ff::build_tower(fs.p, fs.k, fs.n);
    json j;
    j["p"] = fs.p;
    j["k"] = fs.k;
    j["n"] = fs.n;
    j["q"] = fs.q();
    if (fs.k > 1) j["base_modulus"] = poly_json(tower->base().modulus());
    j["top_modulus"] = poly_json(tower->top_modulus());
    j["generator"] = tower->generator().coords;
    j["order"] = report::factored(tower->factored_order());
    const auto fx = ff::factor_xn_minus_1(tower->base(), fs.n);
    json fac = json::array();
    for (const auto& t : fx.factors) fac.push_back({{"poly", poly_json(t.poly)}, {"multiplicity", t.multiplicity}});
    j["xn1_factors"] = fac;
    const auto pat = ff::xn_pattern(fs.q(), fs.n);
    j["s"] = pat.s();
    j["Wq"] = report::big(pat.Wq());
    j["Phi"] = report::big(pat.Phi());
    (void)g;
    em.line(j);
}

void cmd_nfree(const Globals& g, Emitter& em, const text::FieldSpec& fs, u64 element, u64 e) {
    const auto ctx = context(g, fs);
    if (element == 0 || element >= ctx->size()) throw std::invalid_argument("element must be a nonzero index below q^n");
    const u64 ee = e ? e : ctx->size() - 1;
    json j;
    j["element"] = element;
    j["e"] = ee;
    j["e_free"] = ctx->is_e_free(element, ee);
    j["primitive"] = ctx->is_primitive(element);
    j["log"] = ctx->field().log(element);
    em.line(j);
}

void cmd_normal(const Globals& g, Emitter& em, const text::FieldSpec& fs, u64 element, const std::string& gtext) {
    const auto ctx = context(g, fs);
    if (element >= ctx->size()) throw std::invalid_argument("element must be an index below q^n");
    const ff::Poly gp = gtext.empty() ? ctx->xn1() : text::parse_poly(gtext);
    json j;
    j["element"] = element;
    j["g"] = poly_json(gp);
    j["g_free"] = ctx->is_g_free(element, gp);
    j["normal"] = ctx->is_normal(element);
    j["additive_order"] = poly_json(ctx->additive_order(element));
    em.line(j);
}

void cmd_count_pn(const Globals& g, Emitter& em, const text::FieldSpec& fs) {
    const auto ctx = context(g, fs);
    em.line({{"N", freeness::count_primitive_normal(*ctx, g.threads)}, {"q", fs.q()}, {"n", fs.n}});
}

upsilon::RationalFn rational(const freeness::FreenessContext& ctx, const std::string& ftext, unsigned m1, unsigned m2) {
    const auto [f1, f2] = text::parse_rational(ftext);
    for (const auto& p : {f1, f2})
        for (auto c : p.c)
            if (c >= ctx.size()) throw std::invalid_argument("coefficient " + std::to_string(c) + " is not a field element index");
    return upsilon::RationalFn(ctx.field(), f1, f2, m1, m2);
}

void cmd_upsilon(const Globals& g, Emitter& em, const text::FieldSpec& fs, const std::string& ftext, const std::string& m,
                 bool subfield) {
    const auto ctx = context(g, fs);
    const auto [m1, m2] = text::parse_pair(m);
    const auto f = rational(*ctx, ftext, m1, m2);
    const auto mem = upsilon::in_upsilon(ctx->field(), f, subfield ? upsilon::Mode::Subfield : upsilon::Mode::BigField);
    json j;
    j["f"] = text::format_rational(f.f1(), f.f2());
    j["member"] = mem.member;
    j["mode"] = subfield ? "subfield" : "bigfield";
    if (mem.witness) j["witness"] = {{"factor", poly_json(mem.witness->poly)}, {"multiplicity", mem.witness->multiplicity}};
    else j["reason"] = mem.reason;
    em.line(j);
}

void cmd_rho_kappa(const Globals& g, Emitter& em, const text::FieldSpec& fs) {
    const auto ctx = context(g, fs);
    charsums::CharacterContext cc(ctx);
    double max_dev = 0;
    u64 checked = 0, mismatches = 0;
    for (const auto& s : ntheory::divisors(ctx->factored_order())) {
        const u64 su = to_u64(s);
        for (u64 a = 1; a < ctx->size(); ++a) {
            const auto v = cc.rho_value(a, su);
            const double dev = std::abs(v - std::complex<double>(ctx->is_e_free(a, su) ? 1 : 0, 0));
            max_dev = std::max(max_dev, dev);
            if (dev >= charsums::kIndicatorTolerance) ++mismatches;
            ++checked;
        }
    }
    for (const auto& gd : ctx->monic_divisors()) {
        for (u64 b = 0; b < ctx->size(); ++b) {
            const auto v = cc.kappa_value(b, gd);
            const double dev = std::abs(v - std::complex<double>(ctx->is_g_free(b, gd.poly) ? 1 : 0, 0));
            max_dev = std::max(max_dev, dev);
            if (dev >= charsums::kIndicatorTolerance) ++mismatches;
            ++checked;
        }
    }
    em.line({{"field", fs.to_string()}, {"checked", checked}, {"mismatches", mismatches}, {"max_deviation", max_dev}});
}

void cmd_weil(const Globals& g, Emitter& em, const text::FieldSpec& fs, unsigned instances, u64 seed) {
    const auto ctx = context(g, fs);
    charsums::CharacterContext cc(ctx);
    std::mt19937_64 rng(seed);
    unsigned violations = 0, hybrid = 0;
    double worst = 0;
    for (unsigned i = 0; i < instances; ++i) {
        const auto w = charsums::random_weil_instance(cc, rng);
        const auto r = cc.weil_check(w.v, w.u, w.chi, w.psi);
        if (!r.holds) ++violations;
        if (r.hybrid) ++hybrid;
        if (r.rhs > 0) worst = std::max(worst, r.lhs / r.rhs);
    }
    em.line({{"field", fs.to_string()}, {"instances", instances}, {"hybrid", hybrid}, {"violations", violations},
             {"max_ratio", worst}, {"seed", seed}});
}

void cmd_nf_count(const Globals& g, Emitter& em, const text::FieldSpec& fs, const std::string& ftext, const std::string& m,
                  u64 e1, u64 e2, const std::string& gtext, bool characters) {
    const auto ctx = context(g, fs);
    const auto [m1, m2] = text::parse_pair(m);
    const auto f = rational(*ctx, ftext, m1, m2);
    const u64 E1 = e1 ? e1 : ctx->size() - 1, E2 = e2 ? e2 : ctx->size() - 1;
    const ff::Poly gp = gtext.empty() ? ctx->xn1() : text::parse_poly(gtext);
    const auto r = search::count_nf_direct(*ctx, f, E1, E2, gp, search::kDefaultWitnessCap, g.threads);
    json j;
    j["f"] = text::format_rational(f.f1(), f.f2());
    j["e1"] = E1;
    j["e2"] = E2;
    j["g"] = poly_json(gp);
    j["n_f"] = r.n_f;
    j["witnesses"] = r.witnesses;
    const auto tb = certify::theorem_bound(*ctx, m1, m2, E1, E2, ctx->divisor_of(gp));
    j["theorem_bound"] = {{"lower_bound", static_cast<double>(tb.lower_bound)}, {"sufficient", tb.sufficient}};
    if (characters) {
        charsums::CharacterContext cc(ctx);
        j["by_characters"] = cc.n_f_by_characters(f, E1, E2, ctx->divisor_of(gp));
    }
    em.line(j);
}

certify::ClassifyOptions classify_options(const Globals& g, bool general_q, const std::string& engine, u64 ex_cap) {
    certify::ClassifyOptions o;
    o.budget = budget(g);
    o.field_cap = cap(g);
    o.allow_general_q = general_q;
    o.exhaustive.engine = search::parse_engine(engine);
    if (ex_cap) o.exhaustive.cap = ex_cap;
    return o;
}

void emit_classifications(const Globals& g, Emitter& em, const std::vector<certify::PairClassification>& rs) {
    if (em.is_csv()) {
        em.csv_header();
        for (const auto& r : rs) em.csv(report::to_csv_row(r, g.timings));
    } else {
        for (const auto& r : rs) em.line(report::to_json(r, g.timings));
    }
}

bool any_indeterminate(const std::vector<certify::PairClassification>& rs) {
    for (const auto& r : rs)
        if (r.status == certify::Status::Indeterminate) return true;
    return false;
}

std::vector<certify::Rule> strategy_from(const std::string& rules, const std::string& ell, const std::string& gspec) {
    if (!ell.empty() || !gspec.empty()) {
        if (!rules.empty()) throw text::ParseError("--rules cannot be combined with --ell/--g");
        return {certify::Rule::sieve(certify::EllSpec::parse(ell.empty() ? "full" : ell),
                                     certify::GSpec::parse(gspec.empty() ? "1" : gspec))};
    }
    return rules.empty() ? certify::default_strategy() : certify::parse_strategy(rules);
}

void cmd_certify(const Globals& g, Emitter& em, const std::string& field, const std::string& m, const std::string& rules,
                 const std::string& ell, const std::string& gspec, const std::string& replay_path, bool general_q,
                 const std::string& engine, u64 ex_cap) {
    const auto opts = classify_options(g, general_q, engine, ex_cap);
    if (!replay_path.empty()) {
        std::ifstream in(replay_path);
        if (!in) throw std::runtime_error("cannot open " + replay_path);
        std::string line;
        unsigned count = 0, matched = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto rp = report::parse_replay(json::parse(line));
            const auto c = certify::classify_pair(rp.q, rp.n, rp.m1, rp.m2, {rp.rule}, opts);
            const bool ok = c.status == rp.status;
            ++count;
            matched += ok ? 1 : 0;
            em.line({{"q", rp.q}, {"n", rp.n}, {"rule", rp.rule.to_string()}, {"expected", certify::to_string(rp.status)},
                     {"replayed", certify::to_string(c.status)}, {"matches", ok}});
        }
        if (matched != count) throw std::runtime_error("certificate replay disagreed on " + std::to_string(count - matched) + " line(s)");
        return;
    }
    if (field.empty()) throw text::ParseError("certify needs --field or --replay");
    const auto fs = text::parse_field(field);
    const auto [m1, m2] = text::parse_pair(m);
    const auto c = certify::classify_pair(fs.q(), fs.n, m1, m2, strategy_from(rules, ell, gspec), opts);
    emit_classifications(g, em, {c});
    if (c.status == certify::Status::Indeterminate) throw Indeterminate{};
}

void cmd_scan(const Globals& g, Emitter& em, const std::string& qr, const std::string& nr, const std::string& m,
              const std::string& rules, const std::string& ell, const std::string& gspec, bool general_q,
              const std::string& engine, u64 ex_cap) {
    const auto [qlo, qhi] = text::parse_range(qr);
    const auto [nlo, nhi] = text::parse_range(nr);
    const auto [m1, m2] = text::parse_pair(m);
    const auto rs = certify::scan(qlo, qhi, static_cast<unsigned>(nlo), static_cast<unsigned>(nhi), m1, m2,
                                  strategy_from(rules, ell, gspec), classify_options(g, general_q, engine, ex_cap), g.threads);
    emit_classifications(g, em, rs);
    if (any_indeterminate(rs)) throw Indeterminate{};
}

void cmd_threshold(Emitter& em, const std::string& m, const std::string& ts, const std::string& ns, u64 q,
                   const std::string& regime_s, double custom_c, double custom_w, bool exclude_char) {
    const auto [m1, m2] = text::parse_pair(m);
    const auto regime = certify::parse_regime(regime_s);
    const auto t_values = parse_doubles(ts);
    if (q) {
        const auto pp = ntheory::prime_power(q);
        if (!pp) throw text::ParseError("q is not a prime power");
        const std::optional<u64> ex = exclude_char ? std::optional<u64>(pp->prime) : std::nullopt;
        for (const double t : t_values) {
            const long double nmin = certify::threshold_n(q, m1, m2, t, regime, ex);
            em.line({{"q", q}, {"t", t}, {"regime", certify::to_string(regime)}, {"n_min", static_cast<double>(nmin)},
                     {"n_from", static_cast<u64>(std::ceil(nmin))}});
        }
        return;
    }
    const auto n_values = parse_doubles(ns);
    if (n_values.size() != t_values.size() && n_values.size() != 1)
        throw text::ParseError("--n must list one value or as many values as --t");
    certify::ThresholdForm custom;
    if (regime == certify::Regime::Custom) {
        custom.constant = custom_c;
        custom.w = custom_w;
        custom.a = 0;
        custom.b = 0;
    }
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        const auto n = static_cast<unsigned>(n_values.size() == 1 ? n_values[0] : n_values[i]);
        const long double qmin = certify::threshold_q(n, m1, m2, t_values[i], regime, custom);
        em.line({{"n", n}, {"t", t_values[i]}, {"regime", certify::to_string(regime)}, {"q_min", static_cast<double>(qmin)},
                 {"q_from", static_cast<double>(std::ceil(qmin))}});
    }
}

struct KnownCounterexample {
    text::FieldSpec field;
    freeness::ContextPtr ctx;
    upsilon::RationalFn f;
};

/// The three published counterexamples; the (3,4) one is built from a root of x^4 - x^3 - 1.
std::vector<KnownCounterexample> printed_counterexamples(const Globals& g) {
    std::vector<KnownCounterexample> out;
    for (const text::FieldSpec fs : {text::FieldSpec{2, 1, 6}, text::FieldSpec{3, 1, 3}, text::FieldSpec{3, 1, 4}}) {
        const auto ctx = context(g, fs);
        const auto& F = ctx->field();
        ff::Poly f1, f2 = ff::Poly::constant(1);
        if (fs.p == 2) {
            f1 = ff::Poly({1, 1, 1});
        } else if (fs.n == 3) {
            f1 = ff::Poly({2, 1, 1});
        } else {
            ff::PolyRing<ff::IndexedField> R(F);
            const ff::Poly m({F.neg(1), 0, 0, F.neg(1), 1});
            u64 a = 0;
            for (u64 x = 1; x < F.size() && a == 0; ++x)
                if (R.eval(m, x) == 0) a = x;
            if (a == 0) throw std::logic_error("x^4 - x^3 - 1 has no root in F_81");
            const u64 two = F.from_int(2), a2 = F.mul(a, a), a3 = F.mul(a2, a);
            f1 = ff::Poly({F.add(F.add(F.mul(two, a3), F.mul(two, a2)), 1), a});
            f2 = ff::Poly({F.mul(two, a), 1});
        }
        out.push_back({fs, ctx, upsilon::RationalFn::of(F, f1, f2)});
    }
    return out;
}

void cmd_counterexample(const Globals& g, Emitter& em, const std::string& field, const std::string& ftext, bool printed,
                        bool search_mode, const std::string& m, const std::string& engine, u64 ex_cap) {
    if (printed) {
        for (const auto& [fs, ctx, rf] : printed_counterexamples(g)) {
            const auto r = search::verify_counterexample(*ctx, rf);
            em.line({{"field", fs.to_string()}, {"f", text::format_rational(rf.f1(), rf.f2())},
                     {"in_upsilon", upsilon::in_upsilon(ctx->field(), rf).member}, {"confirmed", r.confirmed},
                     {"pn_count", r.pn_count}, {"surviving_alphas", r.surviving_alphas}});
        }
        return;
    }
    if (field.empty()) throw text::ParseError("counterexample needs --field, or --printed");
    const auto fs = text::parse_field(field);
    const auto ctx = context(g, fs);
    if (search_mode) {
        const auto [m1, m2] = text::parse_pair(m);
        search::ExhaustiveOptions o;
        o.engine = search::parse_engine(engine);
        if (ex_cap) o.cap = ex_cap;
        const auto r = search::exhaustive_search(*ctx, m1, m2, o);
        json j = report::to_json(r);
        j["field"] = fs.to_string();
        j["verdict"] = r.verdict == search::Verdict::InB ? "InB" : r.verdict == search::Verdict::NotInB ? "NotInB" : "Unresolved";
        em.line(j);
        if (r.verdict == search::Verdict::Unresolved) throw Indeterminate{};
        return;
    }
    if (ftext.empty()) throw text::ParseError("counterexample needs --f, --search or --printed");
    const auto [m1, m2] = text::parse_pair(m);
    const auto rf = rational(*ctx, ftext, m1, m2);
    const auto r = search::verify_counterexample(*ctx, rf);
    em.line({{"field", fs.to_string()}, {"f", text::format_rational(rf.f1(), rf.f2())},
             {"in_upsilon", upsilon::in_upsilon(ctx->field(), rf).member}, {"confirmed", r.confirmed},
             {"pn_count", r.pn_count}, {"surviving_alphas", r.surviving_alphas}});
}

// ------------------------------------------------------------- reproduce

struct ReproduceArgs {
    std::string target;
    std::string t_list;
    std::string q_range;
    std::string n_range;
};

json tagged(const certify::PairClassification& c, const std::string& target, const std::string& recipe, bool timings) {
    json j = report::to_json(c, timings);
    j["target"] = target;
    j["recipe"] = recipe;
    return j;
}

/// Runs `first` over the range and `second` on whatever is left unresolved.
bool staged(const Globals& g, Emitter& em, const std::string& target, const std::vector<u64>& qs, unsigned n,
            const std::string& first, const std::vector<std::string>& later) {
    auto opts = classify_options(g, false, "auto", 0);
    bool indeterminate = false;
    std::vector<u64> left;
    for (const u64 q : qs) {
        const auto c = certify::classify_pair(q, n, 3, 2, certify::parse_strategy(first), opts);
        if (c.status == certify::Status::Indeterminate) indeterminate = true;
        if (c.status != certify::Status::ProvedInB) left.push_back(q);
    }
    em.line({{"target", target}, {"stage", first}, {"n", n}, {"pairs", qs.size()}, {"remaining", left}});
    for (const auto& recipe : later) {
        std::vector<u64> still;
        for (const u64 q : left) {
            const auto c = certify::classify_pair(q, n, 3, 2, certify::parse_strategy(recipe), opts);
            em.line(tagged(c, target, recipe, g.timings));
            if (c.status != certify::Status::ProvedInB) still.push_back(q);
        }
        em.line({{"target", target}, {"stage", recipe}, {"n", n}, {"remaining", still}});
        left = still;
    }
    return indeterminate;
}

void cmd_reproduce(const Globals& g, Emitter& em, const ReproduceArgs& a) {
    const auto range_or = [&](const std::string& s, u64 lo, u64 hi) {
        return s.empty() ? std::pair<u64, u64>{lo, hi} : text::parse_range(s);
    };
    bool indeterminate = false;
    const std::string& t = a.target;
    if (t == "threshold-table") {
        // q >= (2^n 6 A_t^2)^(2t/((t-4)n)) per row
        const std::vector<unsigned> ns{3, 4, 5, 6, 10, 158};
        std::vector<double> ts{6.3, 6.3, 6.4, 6.5, 6.7, 9};
        if (!a.t_list.empty()) ts = parse_doubles(a.t_list);
        if (ts.size() != ns.size()) throw text::ParseError("--t must list six values");
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto qmin = certify::threshold_q(ns[i], 3, 2, ts[i], certify::Regime::Generic);
            em.line({{"target", t}, {"recipe", "generic"}, {"t", ts[i]}, {"n", ns[i]}, {"q_min", static_cast<double>(qmin)}});
        }
    } else if (t == "sieve-scan") {
        const auto [qlo, qhi] = range_or(a.q_range, 9239, 20000);
        const auto [nlo, nhi] = range_or(a.n_range, 6, 9);
        const auto rs = certify::scan(qlo, qhi, static_cast<unsigned>(nlo), static_cast<unsigned>(nhi), 3, 2,
                                      certify::parse_strategy("sieve:gcd210/1"), classify_options(g, false, "auto", 0),
                                      g.threads);
        unsigned proved = 0;
        for (const auto& r : rs) {
            if (r.status == certify::Status::ProvedInB) ++proved;
            else em.line(tagged(r, t, "sieve:gcd210/1", g.timings));
        }
        indeterminate = any_indeterminate(rs);
        em.line({{"target", t}, {"recipe", "sieve:gcd210/1"}, {"pairs", rs.size()}, {"proved", proved},
                 {"q_range", {qlo, qhi}}, {"n_range", {nlo, nhi}}});
    } else if (t == "exceptional-pairs") {
        const std::vector<std::pair<u64, unsigned>> pairs{{32, 31}, {27, 26}, {27, 52}, {25, 24}, {25, 48}, {49, 48}, {23, 22},
                                                          {23, 44}, {31, 30}, {37, 36}, {41, 40}, {43, 42}, {47, 46}, {53, 52}};
        const auto opts = classify_options(g, false, "auto", 0);
        for (const auto& [q, n] : pairs)
            for (const std::string recipe : {"sieve:gcd210/1", "sieve:gcd210/linear"}) {
                const auto c = certify::classify_pair(q, n, 3, 2, certify::parse_strategy(recipe), opts);
                em.line(tagged(c, t, recipe, g.timings));
                if (c.status == certify::Status::Indeterminate) indeterminate = true;
            }
    } else if (t == "cubic") {
        const auto w = certify::worst_case_sieve(BigInt("13988000000000000000"), ntheory::PrimeClass::CongruentOneMod3, 3, 10000);
        certify::ThresholdForm form;
        form.constant = 954;
        form.w = 1;
        form.a = 0;
        form.b = 0;
        const auto qmin = certify::threshold_q(3, 3, 2, 3.7, certify::Regime::Custom, form);
        em.line({{"target", t}, {"recipe", "ell=q-1,g=1 worst case"}, {"r_max", w.r_max}, {"delta_lower", w.delta_lower.get_d()},
                 {"Delta_upper", w.Delta_upper.get_d()}, {"q_min", static_cast<double>(qmin)}});
        const auto [qlo, qhi] = range_or(a.q_range, 2, 22281);
        indeterminate = staged(g, em, t, ntheory::prime_powers_in(qlo, qhi), 3, "sieve:gcd30/1", {"sieve:gcd2/1", "sieve:gcd6/1"});
    } else if (t == "quartic") {
        const auto w = certify::worst_case_sieve(BigInt("2340000000000000000000000000000"),
                                                 ntheory::PrimeClass::OddGreaterThan13, 4, 1000);
        const BigRational need = BigRational(6 * 64 * 64) * w.Delta_upper;
        em.line({{"target", t}, {"recipe", "gcd30030/1 worst case"}, {"r_max", w.r_max}, {"delta_lower", w.delta_lower.get_d()},
                 {"Delta_upper", w.Delta_upper.get_d()}, {"q_min", std::sqrt(need.get_d())}});
        const auto [qlo, qhi] = range_or(a.q_range, 2, 3119);
        indeterminate = staged(g, em, t, ntheory::prime_powers_in(qlo, qhi), 4, "sieve:gcd30/1", {"sieve:gcd6/1"});
    } else if (t == "quintic") {
        const auto [qlo, qhi] = range_or(a.q_range, 2, 5000);
        indeterminate = staged(g, em, t, ntheory::prime_powers_in(qlo, qhi), 5, "sieve:gcd30/1", {"sieve:6/1"});
    } else if (t == "small-q") {
        struct Row {
            u64 q;
            double t;
            certify::Regime regime;
            std::string recipe;
        };
        const std::vector<Row> rows{{2, 9.8, certify::Regime::LenstraQ2, "corollary,sieve:gcd15/smalldeg"},
                                    {3, 8.8, certify::Regime::LenstraQ3, "corollary,sieve:gcd10/linear"},
                                    {4, 8, certify::Regime::LenstraQ4, "corollary,sieve:gcd105/linear"},
                                    {5, 7.8, certify::Regime::LenstraQ5, "corollary,sieve:gcd6/linear,sieve:6/1"},
                                    {7, 10.4, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"},
                                    {8, 9.8, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"},
                                    {9, 9.4, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"},
                                    {11, 9, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"},
                                    {13, 8.6, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"},
                                    {16, 8.1, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"},
                                    {17, 8.1, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"},
                                    {19, 8, certify::Regime::WqCap34, "corollary,sieve:gcd30/linear,sieve:gcd30/1"}};
        const auto [nlo, nhi] = range_or(a.n_range, 3, 40);
        const auto opts = classify_options(g, false, "auto", 0);
        for (const auto& row : rows) {
            const auto pp = ntheory::prime_power(row.q);
            const auto nmin = certify::threshold_n(row.q, 3, 2, row.t, row.regime, pp->prime);
            em.line({{"target", t}, {"q", row.q}, {"t", row.t}, {"regime", certify::to_string(row.regime)},
                     {"n_from", static_cast<u64>(std::ceil(nmin))}});
            std::vector<unsigned> open;
            for (u64 n = nlo; n <= nhi; ++n) {
                const auto c = certify::classify_pair(row.q, static_cast<unsigned>(n), 3, 2, certify::parse_strategy(row.recipe), opts);
                if (c.status == certify::Status::Indeterminate) indeterminate = true;
                if (c.status != certify::Status::ProvedInB) open.push_back(static_cast<unsigned>(n));
            }
            em.line({{"target", t}, {"q", row.q}, {"recipe", row.recipe}, {"n_range", {nlo, nhi}}, {"open", open}});
        }
        for (const auto& [q, n, recipe] : std::vector<std::tuple<u64, unsigned, std::string>>{
                 {13, 12, "sieve:210/[12,0,1]"}, {16, 45, "sieve:105/linear"}}) {
            const auto c = certify::classify_pair(q, n, 3, 2, certify::parse_strategy(recipe), opts);
            em.line(tagged(c, t, recipe, g.timings));
        }
    } else if (t == "small-fields") {
        const auto opts = classify_options(g, false, "auto", 0);
        for (const auto& [p, k, n] : std::vector<std::tuple<u64, unsigned, unsigned>>{
                 {2, 1, 3}, {2, 1, 4}, {2, 1, 5}, {2, 1, 7}, {2, 1, 11}, {2, 3, 3}}) {
            const text::FieldSpec fs{p, k, n};
            const auto ctx = context(g, fs);
            const auto N = freeness::count_primitive_normal(*ctx, g.threads);
            const auto c = certify::classify_pair(fs.q(), n, 3, 2, certify::parse_strategy("nobb,yesbb"), opts);
            json j = tagged(c, t, "nobb,yesbb", g.timings);
            j["N"] = N;
            em.line(j);
        }
        for (const auto& [fs, ctx, rf] : printed_counterexamples(g)) {
            const auto r = search::verify_counterexample(*ctx, rf);
            em.line({{"target", t}, {"recipe", "counterexample"}, {"field", fs.to_string()},
                     {"f", text::format_rational(rf.f1(), rf.f2())}, {"confirmed", r.confirmed}});
        }
    } else if (t == "cubic-primes") {
        const auto [qlo, qhi] = range_or(a.q_range, 2, 10000);
        u64 checked = 0, failures = 0;
        for (const u64 q : ntheory::prime_powers_in(qlo, qhi)) {
            const auto f = ntheory::factor_integer(q * q + q + 1, budget(g));
            for (const auto& pp : f.factors()) {
                const u64 r = to_u64(pp.prime);
                if (r == 3) continue;
                ++checked;
                if (r % 3 != 1 || (q - 1) % r == 0) ++failures;
            }
        }
        em.line({{"target", t}, {"q_range", {qlo, qhi}}, {"primes_checked", checked}, {"failures", failures}});
    } else {
        throw text::ParseError("unknown reproduce target '" + t +
                               "' (threshold-table, sieve-scan, exceptional-pairs, cubic, quartic, quintic, small-q, "
                               "small-fields, cubic-primes)");
    }
    if (indeterminate) throw Indeterminate{};
}

int fail(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", message}, {"kind", kind}}.dump() << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"primitive normal pairs: fields, character sums, sieve certificates"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--budget-ms", g.budget_ms, "factorization budget per piece (default PNPAIR_BUDGET_MS or 10000)");
    app.add_option("--cap", g.cap, "largest enumerable q^n (default PNPAIR_FIELD_CAP or 2^20)");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", g.output, "write the report to this file");
    app.add_flag("--timings", g.timings, "record wall-clock milliseconds in reports");

    std::string value, cyclo, field, element_s, e_s, gtext, ftext, m = "3,2", rules, ell, gspec, replay, engine = "auto";
    std::string qr, nr, ts, ns = "3", regime = "generic";
    u64 element = 0, e = 0, e1 = 0, e2 = 0, seed = 1, q = 0, ex_cap = 0;
    unsigned instances = 1000;
    bool subfield = false, characters = false, general_q = false, printed = false, search_mode = false, exclude_char = false;
    double custom_c = 0, custom_w = 1;
    ReproduceArgs ra;

    auto* c_factor = app.add_subcommand("factor", "factor an integer or q^n - 1");
    c_factor->add_option("value", value, "integer to factor");
    c_factor->add_option("--cyclotomic", cyclo, "factor q^n - 1 given q,n");

    auto* c_info = app.add_subcommand("field-info", "moduli, generator and x^n - 1 over F_q");
    c_info->add_option("--field", field, "p^k,n or q,n")->required();

    auto* c_nfree = app.add_subcommand("nfree", "e-freeness and primitivity of an element");
    c_nfree->add_option("--field", field, "p^k,n or q,n")->required();
    c_nfree->add_option("--element", element, "element index")->required();
    c_nfree->add_option("--e", e, "divisor of q^n - 1 (default q^n - 1)");

    auto* c_normal = app.add_subcommand("normal", "g-freeness, normality and additive order of an element");
    c_normal->add_option("--field", field, "p^k,n or q,n")->required();
    c_normal->add_option("--element", element, "element index")->required();
    c_normal->add_option("--g", gtext, "monic divisor of x^n - 1 (default x^n - 1)");

    auto* c_count = app.add_subcommand("count-pn", "number of primitive normal elements");
    c_count->add_option("--field", field, "p^k,n or q,n")->required();

    auto* c_ups = app.add_subcommand("upsilon-check", "membership in the admissible set");
    c_ups->add_option("--field", field, "p^k,n or q,n")->required();
    c_ups->add_option("--f", ftext, "f1/f2 as coefficient lists")->required();
    c_ups->add_option("--m", m, "degree caps m1,m2");
    c_ups->add_flag("--subfield", subfield, "factor over F_q instead of F_{q^n}");

    auto* c_rk = app.add_subcommand("rho-kappa-verify", "characteristic functions against the direct predicates");
    c_rk->add_option("--field", field, "p^k,n or q,n")->required();

    auto* c_weil = app.add_subcommand("weil-verify", "random character sums against the Weil-type bound");
    c_weil->add_option("--field", field, "p^k,n or q,n")->required();
    c_weil->add_option("--instances", instances, "number of random instances");
    c_weil->add_option("--seed", seed, "generator seed");

    auto* c_nf = app.add_subcommand("nf-count", "N_f(e1, e2, g) by enumeration");
    c_nf->add_option("--field", field, "p^k,n or q,n")->required();
    c_nf->add_option("--f", ftext, "f1/f2 as coefficient lists")->required();
    c_nf->add_option("--m", m, "degree caps m1,m2");
    c_nf->add_option("--e1", e1, "divisor of q^n - 1 for alpha");
    c_nf->add_option("--e2", e2, "divisor of q^n - 1 for f(alpha)");
    c_nf->add_option("--g", gtext, "monic divisor of x^n - 1");
    c_nf->add_flag("--characters", characters, "also evaluate the character expansion");

    const auto add_rule_opts = [&](CLI::App* c) {
        c->add_option("--m", m, "degree caps m1,m2");
        c->add_option("--rules", rules, "comma-separated rule list");
        c->add_option("--ell", ell, "sieve l: full, gcdM or an integer");
        c->add_option("--g", gspec, "sieve g: 1, full, linear, smalldeg or a polynomial");
        c->add_flag("--allow-general-q", general_q, "apply the power-of-two small-field rule to any q");
        c->add_option("--engine", engine, "exhaustive engine: auto, interpolate, enumerate");
        c->add_option("--exhaustive-cap", ex_cap, "work cap of the exhaustive rule");
    };
    auto* c_cert = app.add_subcommand("certify", "classify one pair");
    c_cert->add_option("--field", field, "q,n or p^k,n");
    c_cert->add_option("--replay", replay, "report file whose certificates are re-run");
    add_rule_opts(c_cert);

    auto* c_scan = app.add_subcommand("scan", "classify a range of pairs");
    c_scan->add_option("--q-range", qr, "lo..hi")->required();
    c_scan->add_option("--n-range", nr, "lo..hi")->required();
    add_rule_opts(c_scan);

    auto* c_thr = app.add_subcommand("threshold", "closed-form thresholds in q (fixed n) or n (fixed q)");
    c_thr->add_option("--m", m, "degree caps m1,m2");
    c_thr->add_option("--t", ts, "comma-separated t values")->required();
    c_thr->add_option("--n", ns, "n, or one n per t");
    c_thr->add_option("--q", q, "solve for n at this q");
    c_thr->add_option("--regime", regime, "generic, lenstra-q2..q5, wq-cap-3/4, custom");
    c_thr->add_option("--constant", custom_c, "custom regime constant");
    c_thr->add_option("--w", custom_w, "custom regime exponent of q in the bound for W");
    c_thr->add_flag("--exclude-char", exclude_char, "drop the characteristic from A_t");

    auto* c_ce = app.add_subcommand("counterexample", "verify or search for failing functions");
    c_ce->add_option("--field", field, "p^k,n or q,n");
    c_ce->add_option("--f", ftext, "f1/f2 as coefficient lists");
    c_ce->add_option("--m", m, "degree caps m1,m2");
    c_ce->add_flag("--printed", printed, "verify the three known counterexamples");
    c_ce->add_flag("--search", search_mode, "exhaustive search over the field");
    c_ce->add_option("--engine", engine, "exhaustive engine: auto, interpolate, enumerate");
    c_ce->add_option("--exhaustive-cap", ex_cap, "work cap of the exhaustive rule");

    auto* c_rep = app.add_subcommand("reproduce", "curated runs of the published computations");
    c_rep->add_option("target", ra.target,
                      "threshold-table, sieve-scan, exceptional-pairs, cubic, quartic, quintic, small-q, small-fields, cubic-primes")
        ->required();
    c_rep->add_option("--t", ra.t_list, "t values for threshold-table");
    c_rep->add_option("--q-range", ra.q_range, "lo..hi");
    c_rep->add_option("--n-range", ra.n_range, "lo..hi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        Emitter em(g);
        if (*c_factor) cmd_factor(g, em, value, cyclo);
        else if (*c_info) cmd_field_info(g, em, text::parse_field(field));
        else if (*c_nfree) cmd_nfree(g, em, text::parse_field(field), element, e);
        else if (*c_normal) cmd_normal(g, em, text::parse_field(field), element, gtext);
        else if (*c_count) cmd_count_pn(g, em, text::parse_field(field));
        else if (*c_ups) cmd_upsilon(g, em, text::parse_field(field), ftext, m, subfield);
        else if (*c_rk) cmd_rho_kappa(g, em, text::parse_field(field));
        else if (*c_weil) cmd_weil(g, em, text::parse_field(field), instances, seed);
        else if (*c_nf) cmd_nf_count(g, em, text::parse_field(field), ftext, m, e1, e2, gtext, characters);
        else if (*c_cert) cmd_certify(g, em, field, m, rules, ell, gspec, replay, general_q, engine, ex_cap);
        else if (*c_scan) cmd_scan(g, em, qr, nr, m, rules, ell, gspec, general_q, engine, ex_cap);
        else if (*c_thr) cmd_threshold(em, m, ts, ns, q, regime, custom_c, custom_w, exclude_char);
        else if (*c_ce) cmd_counterexample(g, em, field, ftext, printed, search_mode, m, engine, ex_cap);
        else if (*c_rep) cmd_reproduce(g, em, ra);
    } catch (const Indeterminate&) {
        return 2;
    } catch (const text::ParseError& e) {
        return fail("usage", e.what());
    } catch (const ff::CapExceeded& e) {
        return fail("cap", e.what());
    } catch (const ntheory::IncompleteFactorization& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "indeterminate"}}.dump() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        return fail("invalid", e.what());
    } catch (const std::domain_error& e) {
        return fail("domain", e.what());
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
    return 0;
}
