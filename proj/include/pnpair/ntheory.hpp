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

#ifndef PNPAIR_NTHEORY_HPP
#define PNPAIR_NTHEORY_HPP

#include "pnpair/ntheory/arith.hpp"
#include "pnpair/ntheory/bounds.hpp"
#include "pnpair/ntheory/factor.hpp"
#include "pnpair/ntheory/factored_integer.hpp"
#include "pnpair/ntheory/primes.hpp"

#endif  // PNPAIR_NTHEORY_HPP
