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
#ifndef PNPAIR_FFPOLY_HPP
#define PNPAIR_FFPOLY_HPP

#include "pnpair/ffpoly/base_field.hpp"
#include "pnpair/ffpoly/factor_poly.hpp"
#include "pnpair/ffpoly/indexed_field.hpp"
#include "pnpair/ffpoly/poly.hpp"
#include "pnpair/ffpoly/tower.hpp"
#include "pnpair/ffpoly/xn1.hpp"

#endif  // PNPAIR_FFPOLY_HPP
