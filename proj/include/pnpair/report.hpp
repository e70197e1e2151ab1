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

#ifndef PNPAIR_REPORT_HPP
#define PNPAIR_REPORT_HPP

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pnpair/certify.hpp"
#include "pnpair/search.hpp"
#include "pnpair/text.hpp"

namespace pnpair::report {

using nlohmann::json;
using ff::u64;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline json big(const BigInt& v) {
    if (fits_u64(v)) return to_u64(v);
    return v.get_str();
}

inline json rational(const BigRational& v) {
    json j;
    j["value"] = v.get_d();
    j["exact"] = v.get_str();
    return j;
}

/// Non-finite doubles become null.
inline json real(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline json factored(const ntheory::FactoredInteger& f) {
    json j;
    j["value"] = big(f.value());
    j["certainty"] = ntheory::to_string(f.certainty());
    json fs = json::array();
    for (const auto& pp : f.factors()) fs.push_back(json::array({big(pp.prime), pp.exponent}));
    j["factors"] = fs;
    if (f.cofactor() != 1) j["cofactor"] = big(f.cofactor());
    return j;
}

inline json to_json(const certify::CorollaryReport& r) {
    return {{"W", big(r.W)}, {"Wq", big(r.Wq)}, {"condition_lhs", real(r.condition_lhs)},
            {"condition_rhs", real(r.condition_rhs)}, {"holds", r.holds}};
}

inline json to_json(const certify::SieveReport& r) {
    json j;
    j["ell_spec"] = r.ell_spec;
    j["g_spec"] = r.g_spec;
    j["ell"] = factored(r.ell);
    j["r"] = r.r;
    j["s"] = r.s;
    json ps = json::array();
    for (const auto& p : r.sieve_primes) ps.push_back(big(p));
    j["sieve_primes"] = ps;
    j["sieve_degrees"] = r.sieve_degrees;
    j["delta"] = rational(r.delta);
    j["Delta"] = r.delta > 0 ? rational(r.Delta) : json(nullptr);
    j["W_ell"] = big(r.W_ell);
    j["Wq_g"] = big(r.Wq_g);
    j["condition_lhs"] = real(r.condition_lhs);
    j["condition_rhs"] = real(r.condition_rhs);
    j["holds"] = r.holds;
    return j;
}

inline json to_json(const search::ExhaustiveResult& r) {
    json j;
    j["engine"] = search::to_string(r.engine);
    j["pn_count"] = r.pn_count;
    j["work"] = r.work;
    j["complete"] = r.complete;
    json fails = json::array();
    for (const auto& f : r.failing) fails.push_back(text::format_rational(f.f1, f.f2));
    j["failing"] = fails;
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back({{"f", text::format_rational(s.f1, s.f2)}, {"alpha", s.alpha}});
    j["samples"] = samples;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const certify::Certificate& c) {
    json j;
    j["rule"] = c.rule.to_string();
    if (c.corollary) j["corollary"] = to_json(*c.corollary);
    if (c.sieve) j["sieve"] = to_json(*c.sieve);
    if (c.nobb) j["nobb"] = {{"N", c.nobb->N}, {"fires", c.nobb->fires}};
    if (c.yesbb)
        j["yesbb"] = {{"N", c.yesbb->N}, {"phi", big(c.yesbb->phi)}, {"fires", c.yesbb->fires}, {"general_q", c.yesbb->general_q}};
    if (c.exhaustive) j["exhaustive"] = to_json(*c.exhaustive);
    return j;
}

inline json to_json(const certify::PairClassification& c, bool timings = false) {
    json j;
    j["q"] = c.q;
    j["n"] = c.n;
    j["m1"] = c.m1;
    j["m2"] = c.m2;
    j["status"] = certify::to_string(c.status);
    j["rule"] = c.certificate ? json(c.certificate->rule.to_string()) : json(nullptr);
    j["certificate"] = c.certificate ? to_json(*c.certificate) : json(nullptr);
    if (!c.certificate && c.last_sieve) j["last_sieve"] = to_json(*c.last_sieve);
    j["attempted"] = c.attempted;
    j["notes"] = c.notes;
    j["millis"] = timings ? std::round(c.millis * 1000) / 1000 : 0.0;
    return j;
}

inline const char* kCsvHeader = "q,n,status,rule,delta,Delta,r,s,W_ell,Wq_g,millis";

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

/// Quotes a field that contains a comma, e.g. a rule with an explicit polynomial.
inline std::string csv_field(const std::string& v) {
    return v.find(',') == std::string::npos ? v : '"' + v + '"';
}

inline std::string to_csv_row(const certify::PairClassification& c, bool timings = false) {
    std::ostringstream os;
    os << c.q << ',' << c.n << ',' << certify::to_string(c.status) << ','
       << (c.certificate ? csv_field(c.certificate->rule.to_string()) : "") << ',';
    const certify::SieveReport* s = nullptr;
    if (c.certificate && c.certificate->sieve) s = &*c.certificate->sieve;
    else if (!c.certificate && c.last_sieve) s = &*c.last_sieve;
    if (c.certificate && c.certificate->corollary) {
        const auto& r = *c.certificate->corollary;
        os << "1,1,0,0," << r.W.get_str() << ',' << r.Wq.get_str();
    } else if (s) {
        os << fmt(s->delta.get_d()) << ',' << (s->delta > 0 ? fmt(s->Delta.get_d()) : "") << ',' << s->r << ',' << s->s
           << ',' << s->W_ell.get_str() << ',' << s->Wq_g.get_str();
    } else {
        os << ",,,,,";
    }
    os << ',' << (timings ? fmt(std::round(c.millis * 1000) / 1000) : "0");
    return os.str();
}

/// Certificate replay input: q, n, m1, m2, status and rule from a report line.
struct ReplayInput {
    u64 q = 0;
    unsigned n = 0, m1 = 0, m2 = 0;
    certify::Status status = certify::Status::Unresolved;
    certify::Rule rule;
};

inline ReplayInput parse_replay(const json& j) {
    ReplayInput r;
    r.q = j.at("q").get<u64>();
    r.n = j.at("n").get<unsigned>();
    r.m1 = j.at("m1").get<unsigned>();
    r.m2 = j.at("m2").get<unsigned>();
    r.status = certify::parse_status(j.at("status").get<std::string>());
    if (j.at("rule").is_null()) throw std::invalid_argument("report has no certificate to replay");
    r.rule = certify::Rule::parse(j.at("rule").get<std::string>());
    return r;
}

}  // namespace pnpair::report

#endif  // PNPAIR_REPORT_HPP
