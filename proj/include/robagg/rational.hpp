// Copyright 2026 The robagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBAGG_RATIONAL_HPP_
#define ROBAGG_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

namespace robagg {

// All quantities in this library are exact rationals. Arbitrary precision is
// required: simplex pivoting and derived-parameter arithmetic overflow 64-bit
// numerators even at modest sizes.
using Rat = mpq_class;

// Parses "p/q", an integer, or a base-10 decimal ("0.25", "-1.5e-3") into an
// exact rational. Decimals are expanded exactly over powers of ten, never via
// binary floating point. Throws Errc::parse_error on malformed input.
Rat parse_rat(const std::string& text);

// "p/q" for non-integers, plain "p" otherwise. Canonical (lowest terms).
std::string rat_str(const Rat& r);

// Decimal rendering with up to max_digits fractional digits, exact when the
// expansion terminates, otherwise rounded half-up at the last digit.
std::string rat_decimal(const Rat& r, int max_digits = 12);

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace robagg

#endif  // ROBAGG_RATIONAL_HPP_
