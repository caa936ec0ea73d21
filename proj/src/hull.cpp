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

#include "robagg/hull.hpp"

#include <algorithm>

#include "robagg/error.hpp"

namespace robagg {

namespace {

// > 0 iff C lies strictly above the line through A and B (x increasing).
Rat cross(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by,
          const Rat& cx, const Rat& cy) {
  return (bx - ax) * (cy - ay) - (cx - ax) * (by - ay);
}

// Monotone chain over grid points already sorted by x. upper=true keeps the
// concave (upper) chain; collinear interior points are dropped either way.
PiecewiseLinear chain(const AggregationRule& rule, bool upper) {
  validate_rule(rule);
  const int n = rule.n;
  std::vector<int> stack;
  stack.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    Rat cx = rat(k, n);
    const Rat& cy = rule.values[k];
    while (stack.size() >= 2) {
      int ib = stack[stack.size() - 1];
      int ia = stack[stack.size() - 2];
      Rat c = cross(rat(ia, n), rule.values[ia], rat(ib, n), rule.values[ib],
                    cx, cy);
      bool drop = upper ? (c >= 0) : (c <= 0);
      if (!drop) break;
      stack.pop_back();
    }
    stack.push_back(k);
  }
  PiecewiseLinear pl;
  pl.xs.reserve(stack.size());
  pl.ys.reserve(stack.size());
  for (int k : stack) {
    pl.xs.push_back(rat(k, n));
    pl.ys.push_back(rule.values[k]);
  }
  return pl;
}

}  // namespace

Rat PiecewiseLinear::eval(const Rat& x) const {
  if (xs.size() < 2) fail(Errc::internal, "piecewise-linear with < 2 points");
  if (x < xs.front() || x > xs.back())
    fail(Errc::out_of_domain,
         "x = " + rat_str(x) + " outside [" + rat_str(xs.front()) + ", " +
             rat_str(xs.back()) + "]");
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  size_t i = static_cast<size_t>(it - xs.begin());
  if (i < xs.size() && xs[i] == x) return ys[i];
  // x strictly between xs[i-1] and xs[i].
  return ys[i - 1] +
         (ys[i] - ys[i - 1]) * (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
}

PiecewiseLinear concavify(const AggregationRule& rule) {
  return chain(rule, /*upper=*/true);
}

PiecewiseLinear convexify(const AggregationRule& rule) {
  return chain(rule, /*upper=*/false);
}

std::pair<int, int> hull_support(const PiecewiseLinear& pl, int n,
                                 const Rat& x) {
  if (x < pl.xs.front() || x > pl.xs.back())
    fail(Errc::out_of_domain, "x = " + rat_str(x) + " outside hull domain");
  auto it = std::lower_bound(pl.xs.begin(), pl.xs.end(), x);
  size_t i = static_cast<size_t>(it - pl.xs.begin());
  auto grid_index = [n](const Rat& bx) {
    Rat g = bx * n;
    return static_cast<int>(g.get_num().get_si());
  };
  if (i < pl.xs.size() && pl.xs[i] == x)
    return {grid_index(pl.xs[i]), grid_index(pl.xs[i])};
  return {grid_index(pl.xs[i - 1]), grid_index(pl.xs[i])};
}

}  // namespace robagg
