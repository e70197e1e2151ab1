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

#ifndef PNPAIR_FFPOLY_FACTOR_POLY_HPP
#define PNPAIR_FFPOLY_FACTOR_POLY_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pnpair/ffpoly/poly.hpp"
#include "pnpair/ntheory/primes.hpp"

namespace pnpair::ff {

struct PolyFactor {
    Poly poly;
    unsigned multiplicity = 0;
    friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

/// unit * prod factor^multiplicity, factors monic irreducible, sorted by poly_less.
struct FactoredPoly {
    u64 unit = 1;
    std::vector<PolyFactor> factors;
};

template <class F>
Poly reassemble(const F& field, const FactoredPoly& fp) {
    PolyRing<F> R(field);
    Poly r = Poly::constant(fp.unit);
    for (const auto& f : fp.factors) r = R.mul(r, R.pow(f.poly, f.multiplicity));
    return r;
}

/// The polynomial whose coefficients are the base-|F| digits of idx.
template <class F>
Poly poly_from_index(const F& field, u64 idx) {
    std::vector<u64> c;
    const u64 s = field.size();
    while (idx > 0) {
        c.push_back(idx % s);
        idx /= s;
    }
    return Poly(std::move(c));
}

namespace detail {

template <class F>
unsigned prime_degree(const F& field) {
    unsigned m = 0;
    for (u64 s = field.size(); s > 1; s /= field.p()) ++m;
    return m;
}

// x^(|F|^i) mod f for i = 0..count.
template <class F>
std::vector<Poly> frobenius_powers_of_x(const PolyRing<F>& R, const Poly& f, unsigned count) {
    std::vector<Poly> out{R.mod(Poly::x(), f)};
    const BigInt q = from_u64(R.field().size());
    for (unsigned i = 1; i <= count; ++i) out.push_back(R.powmod(out.back(), q, f));
    return out;
}

template <class F>
std::vector<PolyFactor> squarefree_decomposition(const PolyRing<F>& R, const Poly& f) {
    std::vector<PolyFactor> out;
    if (f.degree() <= 0) return out;
    const u64 p = R.field().p();
    Poly c = R.gcd(f, R.derivative(f));
    Poly w = R.div_exact(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = R.gcd(w, c);
        Poly fac = R.div_exact(w, y);
        if (fac.degree() > 0) out.push_back({fac, i});
        w = std::move(y);
        c = R.div_exact(c, w);
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& sub : squarefree_decomposition(R, R.pth_root(c)))
            out.push_back({std::move(sub.poly), sub.multiplicity * static_cast<unsigned>(p)});
    }
    return out;
}

// Splits a monic square-free f into products of irreducibles of equal degree.
template <class F>
std::vector<std::pair<Poly, unsigned>> distinct_degree(const PolyRing<F>& R, Poly f) {
    std::vector<std::pair<Poly, unsigned>> out;
    const BigInt q = from_u64(R.field().size());
    Poly h = R.mod(Poly::x(), f);
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(f.degree()); ++d) {
        h = R.powmod(h, q, f);
        Poly g = R.gcd(f, R.sub(h, Poly::x()));
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = R.div_exact(f, g);
            h = R.mod(h, f);
        }
    }
    if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
    return out;
}

template <class F>
void equal_degree(const PolyRing<F>& R, const Poly& f, unsigned d, std::vector<Poly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    const F& field = R.field();
    const u64 q = field.size();
    const bool char2 = field.p() == 2;
    const unsigned m = prime_degree(field);
    BigInt exponent = 0;
    if (!char2) exponent = (big_pow(from_u64(q), d) - 1) / 2;
    // Deterministic trial sequence: x, x+1, ..., then higher-degree polynomials.
    for (u64 j = q;; ++j) {
        Poly a = R.mod(poly_from_index(field, j), f);
        if (a.degree() <= 0) continue;
        Poly b;
        if (char2) {
            Poly cur = a;
            b = a;
            for (unsigned i = 1; i < m * d; ++i) {
                cur = R.mulmod(cur, cur, f);
                b = R.add(b, cur);
            }
        } else {
            b = R.sub(R.powmod(a, exponent, f), Poly::constant(1));
        }
        Poly g = R.gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(R, g, d, out);
            equal_degree(R, R.div_exact(f, g), d, out);
            return;
        }
    }
}

}  // namespace detail

/// Rabin's test: f of degree n is irreducible iff x^(q^n) = x mod f and
/// gcd(x^(q^(n/r)) - x, f) = 1 for every prime r | n.
template <class F>
bool is_irreducible(const F& field, const Poly& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    PolyRing<F> R(field);
    const Poly fm = R.monic(f);
    const auto powers = detail::frobenius_powers_of_x(R, fm, static_cast<unsigned>(n));
    if (powers[static_cast<std::size_t>(n)] != R.mod(Poly::x(), fm)) return false;
    for (const auto d : ntheory::divisors_u64(static_cast<u64>(n))) {
        if (d == 1 || !ntheory::is_prime_u64(d)) continue;
        const Poly g = R.gcd(fm, R.sub(powers[static_cast<std::size_t>(n) / d], Poly::x()));
        if (!g.is_one()) return false;
    }
    return true;
}

/// Complete factorization into monic irreducibles.
template <class F>
FactoredPoly factor_poly(const F& field, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
    PolyRing<F> R(field);
    FactoredPoly out;
    out.unit = f.lead();
    const Poly fm = R.monic(f);
    for (const auto& sf : detail::squarefree_decomposition(R, fm)) {
        for (const auto& [block, d] : detail::distinct_degree(R, sf.poly)) {
            std::vector<Poly> irr;
            detail::equal_degree(R, block, d, irr);
            for (auto& p : irr) out.factors.push_back({std::move(p), sf.multiplicity});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PolyFactor& a, const PolyFactor& b) { return poly_less(a.poly, b.poly); });
    return out;
}

/// Smallest monic irreducible of the given degree, scanning lower coefficients by index.
template <class F>
Poly smallest_monic_irreducible(const F& field, unsigned degree) {
    if (degree == 0) throw std::domain_error("smallest_monic_irreducible: degree 0");
    for (u64 j = 0;; ++j) {
        Poly low = poly_from_index(field, j);
        if (low.degree() >= static_cast<int>(degree)) throw std::logic_error("no irreducible found");
        std::vector<u64> c = low.c;
        c.resize(degree + 1, 0);
        c[degree] = 1;
        Poly cand(std::move(c));
        if (is_irreducible(field, cand)) return cand;
    }
}

}  // namespace pnpair::ff

#endif  // PNPAIR_FFPOLY_FACTOR_POLY_HPP
