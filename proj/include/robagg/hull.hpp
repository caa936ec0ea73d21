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

#ifndef ROBAGG_HULL_HPP_
#define ROBAGG_HULL_HPP_

#include <vector>

#include "robagg/model.hpp"
#include "robagg/rational.hpp"

namespace robagg {

// A piecewise-linear function on [xs.front(), xs.back()], linear between
// consecutive breakpoints. Breakpoint x-coordinates strictly increase and
// collinear interior points are merged, so equal functions compare equal.
struct PiecewiseLinear {
  std::vector<Rat> xs;
  std::vector<Rat> ys;

  // Exact interpolation; throws OutOfDomain outside [xs.front(), xs.back()].
  Rat eval(const Rat& x) const;

  bool operator==(const PiecewiseLinear&) const = default;
};

// Upper concave envelope of the points (k/n, f(k/n)), by monotone chain.
PiecewiseLinear concavify(const AggregationRule& rule);

// Lower convex envelope, by an independent monotone chain (not via negation,
// so the vex = -cav(-f) identity stays a testable property).
PiecewiseLinear convexify(const AggregationRule& rule);

// The hull segment attaining the envelope at x: indices into the rule's grid
// of the segment endpoints (equal when x is a breakpoint of the hull). These
// are the support points of the extremal two-point distributions with mean x.
std::pair<int, int> hull_support(const PiecewiseLinear& pl, int n,
                                 const Rat& x);

}  // namespace robagg

#endif  // ROBAGG_HULL_HPP_
