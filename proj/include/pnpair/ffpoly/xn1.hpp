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

#ifndef PNPAIR_FFPOLY_XN1_HPP
#define PNPAIR_FFPOLY_XN1_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pnpair/ffpoly/base_field.hpp"
#include "pnpair/ffpoly/factor_poly.hpp"
#include "pnpair/ntheory/primes.hpp"

namespace pnpair::ff {

/// Degree pattern of x^n - 1 over F_q, from the q-cyclotomic cosets mod n'.
///
/// With n = n' p^e and p the characteristic, x^n - 1 = (x^n' - 1)^(p^e) and the
/// distinct irreducible factors of x^n' - 1 correspond to the cosets.
struct XnPattern {
    u64 q = 0, n = 0;
    u64 n_prime = 0;
    u64 multiplicity = 1;
    std::vector<u64> degrees;  // ascending, one entry per distinct irreducible factor

    unsigned s() const { return static_cast<unsigned>(degrees.size()); }
    /// Monic square-free divisors: 2^s.
    BigInt Wq() const { return big_pow(BigInt(2), s()); }
    /// |(F_q[x]/(x^n-1))^*|
    BigInt Phi() const {
        BigInt r = 1;
        const BigInt qq = from_u64(q);
        for (const u64 d : degrees) r *= (big_pow(qq, d) - 1) * big_pow(qq, d * (multiplicity - 1));
        return r;
    }
    /// q^n
    BigInt N() const { return big_pow(from_u64(q), n); }
    unsigned linear_count() const {
        return static_cast<unsigned>(std::count(degrees.begin(), degrees.end(), u64{1}));
    }
};

inline XnPattern xn_pattern(u64 q, u64 n) {
    const auto pp = ntheory::prime_power(q);
    if (!pp) throw std::invalid_argument("xn_pattern: q must be a prime power");
    if (n == 0) throw std::invalid_argument("xn_pattern: n must be positive");
    XnPattern out;
    out.q = q;
    out.n = n;
    out.n_prime = n;
    while (out.n_prime % pp->prime == 0) {
        out.n_prime /= pp->prime;
        out.multiplicity *= pp->prime;
    }
    const u64 m = out.n_prime;
    std::vector<char> seen(m, 0);
    const u64 qm = q % m;
    for (u64 i = 0; i < m; ++i) {
        if (seen[i]) continue;
        u64 size = 0, j = i;
        do {
            seen[j] = 1;
            ++size;
            j = static_cast<u64>((static_cast<unsigned __int128>(j) * qm) % m);
        } while (j != i);
        out.degrees.push_back(size);
    }
    std::sort(out.degrees.begin(), out.degrees.end());
    return out;
}

/// x^n - 1 as a polynomial over a field.
template <class F>
Poly xn_minus_1(const F& field, u64 n) {
    std::vector<u64> c(n + 1, 0);
    c[0] = field.neg(1);
    c[n] = field.add(c[n], 1);
    return Poly(std::move(c));
}

/// Explicit factorization of x^n - 1 over F_q.
inline FactoredPoly factor_xn_minus_1(const BaseField& fq, u64 n) { return factor_poly(fq, xn_minus_1(fq, n)); }

}  // namespace pnpair::ff

#endif  // PNPAIR_FFPOLY_XN1_HPP
