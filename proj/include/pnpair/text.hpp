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

#ifndef PNPAIR_TEXT_HPP
#define PNPAIR_TEXT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pnpair/ffpoly/poly.hpp"
#include "pnpair/ntheory/primes.hpp"

namespace pnpair::text {

using ff::Poly;
using ff::u64;

class ParseError : public std::invalid_argument {
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// Little-endian coefficient list of element indices, e.g. "[1,0,1]" is 1 + x^2.
inline std::string format_poly(const Poly& f) {
    nlohmann::json j = nlohmann::json::array();
    if (f.is_zero()) j.push_back(0);
    for (const u64 c : f.c) j.push_back(c);
    return j.dump();
}

inline Poly parse_poly(const std::string& s) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::parse_error&) {
        throw ParseError("malformed polynomial '" + s + "'");
    }
    if (!j.is_array() || j.empty()) throw ParseError("polynomial must be a non-empty array: '" + s + "'");
    std::vector<u64> c;
    for (const auto& e : j) {
        if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0))
            throw ParseError("polynomial coefficients must be non-negative integers: '" + s + "'");
        c.push_back(e.get<u64>());
    }
    return Poly(std::move(c));
}

/// "f1/f2" or "f1" (denominator 1).
inline std::pair<Poly, Poly> parse_rational(const std::string& s) {
    const auto slash = s.find("]/[");
    if (slash == std::string::npos) return {parse_poly(s), Poly::constant(1)};
    return {parse_poly(s.substr(0, slash + 1)), parse_poly(s.substr(slash + 2))};
}

inline std::string format_rational(const Poly& f1, const Poly& f2) {
    return format_poly(f1) + "/" + format_poly(f2);
}

struct FieldSpec {
    u64 p = 0;
    unsigned k = 1;
    unsigned n = 1;
    u64 q() const {
        u64 r = 1;
        for (unsigned i = 0; i < k; ++i) r *= p;
        return r;
    }
    std::string to_string() const { return std::to_string(p) + "^" + std::to_string(k) + "," + std::to_string(n); }
};

inline u64 parse_u64(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(std::string(what) + " must be a positive integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        throw ParseError(std::string(what) + " out of range: '" + s + "'");
    }
}

/// "p^k,n" or "q,n" with q a prime power.
inline FieldSpec parse_field(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("field spec must look like p^k,n or q,n: '" + s + "'");
    const std::string head = s.substr(0, comma);
    FieldSpec f;
    f.n = static_cast<unsigned>(parse_u64(s.substr(comma + 1), "n"));
    if (f.n == 0) throw ParseError("n must be positive");
    const auto caret = head.find('^');
    if (caret != std::string::npos) {
        f.p = parse_u64(head.substr(0, caret), "p");
        f.k = static_cast<unsigned>(parse_u64(head.substr(caret + 1), "k"));
        if (!ntheory::is_prime_u64(f.p)) throw ParseError("p = " + std::to_string(f.p) + " is not prime");
        if (f.k == 0 || f.k > 62) throw ParseError("k out of range");
    } else {
        const u64 q = parse_u64(head, "q");
        const auto pp = ntheory::prime_power(q);
        if (!pp) throw ParseError("q = " + std::to_string(q) + " is not a prime power");
        f.p = pp->prime;
        f.k = pp->exponent;
    }
    return f;
}

/// "a,b" into two unsigned values.
inline std::pair<unsigned, unsigned> parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("expected a,b: '" + s + "'");
    return {static_cast<unsigned>(parse_u64(s.substr(0, comma), "first value")),
            static_cast<unsigned>(parse_u64(s.substr(comma + 1), "second value"))};
}

/// "lo..hi" inclusive.
inline std::pair<u64, u64> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const u64 v = parse_u64(s, "range bound");
        return {v, v};
    }
    const u64 lo = parse_u64(s.substr(0, dots), "range start"), hi = parse_u64(s.substr(dots + 2), "range end");
    if (lo > hi) throw ParseError("empty range '" + s + "'");
    return {lo, hi};
}

}  // namespace pnpair::text

#endif  // PNPAIR_TEXT_HPP
