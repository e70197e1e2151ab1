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

#ifndef PNPAIR_HPP
#define PNPAIR_HPP

#include "pnpair/certify.hpp"
#include "pnpair/charsums.hpp"
#include "pnpair/ffpoly.hpp"
#include "pnpair/freeness.hpp"
#include "pnpair/ntheory.hpp"
#include "pnpair/report.hpp"
#include "pnpair/search.hpp"
#include "pnpair/text.hpp"
#include "pnpair/upsilon.hpp"

#endif  // PNPAIR_HPP
