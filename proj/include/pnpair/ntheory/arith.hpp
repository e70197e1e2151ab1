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

#ifndef PNPAIR_NTHEORY_ARITH_HPP
#define PNPAIR_NTHEORY_ARITH_HPP

#include <algorithm>
#include <vector>

#include "pnpair/ntheory/factored_integer.hpp"

namespace pnpair::ntheory {

inline BigInt euler_phi(const FactoredInteger& f) {
    f.require_complete();
    BigInt phi = 1;
    for (const auto& pp : f.factors()) phi *= (pp.prime - 1) * big_pow(pp.prime, pp.exponent - 1);
    return phi;
}

inline int moebius(const FactoredInteger& f) {
    f.require_complete();
    for (const auto& pp : f.factors())
        if (pp.exponent > 1) return 0;
    return f.factors().size() % 2 == 0 ? 1 : -1;
}

inline unsigned omega(const FactoredInteger& f) {
    f.require_complete();
    return static_cast<unsigned>(f.factors().size());
}

/// Number of square-free divisors, 2^omega.
inline BigInt W(const FactoredInteger& f) { return big_pow(BigInt(2), omega(f)); }

/// All positive divisors, ascending.
inline std::vector<BigInt> divisors(const FactoredInteger& f) {
    f.require_complete();
    std::vector<BigInt> out{1};
    for (const auto& pp : f.factors()) {
        const std::size_t base = out.size();
        BigInt power = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Square-free divisors, ascending.
inline std::vector<BigInt> squarefree_divisors(const FactoredInteger& f) {
    return divisors(f.radical());
}

}  // namespace pnpair::ntheory

#endif  // PNPAIR_NTHEORY_ARITH_HPP
