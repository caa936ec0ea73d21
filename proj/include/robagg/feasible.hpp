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

#ifndef ROBAGG_FEASIBLE_HPP_
#define ROBAGG_FEASIBLE_HPP_

#include <utility>
#include <vector>

#include "robagg/model.hpp"
#include "robagg/rational.hpp"

namespace robagg {

// Extreme point of {rho in Delta(grid) : E[rho] = mean}: at most two support
// points i/n and j/n with i <= j (i == j for a point mass, where wj == 0).
struct MeanVertex {
  int i = 0;
  int j = 0;
  Rat wi;
  Rat wj;

  Rat expectation_of(const std::vector<Rat>& grid_values) const {
    Rat e = wi * grid_values[i];
    if (j != i && wj != 0) e += wj * grid_values[j];
    return e;
  }
  bool is_point_mass() const { return i == j; }
  std::vector<Rat> dense(int n) const;
};

// True iff E[dist0] == a and E[dist1] == b exactly.
bool check_feasible(const ReducedStructure& rs, const Scenario& s);

// All extreme points of the mean-constrained simplex, deduplicated, in
// canonical order: the point mass (when mean is a grid point) first, then
// strict two-point supports (i, j) in lexicographic order.
std::vector<MeanVertex> enumerate_mean_vertex_supports(int n, const Rat& mean);
std::vector<std::vector<Rat>> enumerate_mean_vertices(int n, const Rat& mean);

// Cartesian product of the state-0 and state-1 vertex sets, state-0 major.
std::vector<ReducedStructure> enumerate_adversary_vertices(const Scenario& s);

// The same-signal-to-everyone structure: conditional mass only on fractions
// 0 and 1.
ReducedStructure fully_correlated(const Scenario& s);

// The structure that defeats a threshold rule at tau: state 0 mixes 0 with
// the smallest grid point >= tau, state 1 mixes 1 with the largest grid
// point < tau; supports end up disjoint so the Bayesian guesses perfectly.
ReducedStructure supermajority_adversary(const Scenario& s, const Rat& tau);

// Per-state vertex supports for a multi-state instance (one list per state).
std::vector<std::vector<MeanVertex>> multistate_vertex_supports(
    const MultiScenario& ms);
// Cartesian product materialized as per-state dense distribution tuples.
std::vector<std::vector<std::vector<Rat>>> multistate_vertices(
    const MultiScenario& ms);

// Exact membership test for the polytope C.
bool membership_c(const FullStructure& fs, const Scenario& s);

// Projects a full structure to the induced count distributions.
ReducedStructure reduce(const FullStructure& fs);

// Lifts a feasible reduced structure into C by LP feasibility; throws
// Errc::lift_failure when no lift exists (which would contradict the
// mean-characterization of feasibility). Requires n <= 20.
FullStructure lift_to_full(const ReducedStructure& rs, const Scenario& s);

// Closed-form lift that spreads each count level uniformly over the
// equally-sized reporting sets. Used as an independent cross-check.
FullStructure symmetric_lift(const ReducedStructure& rs, const Scenario& s);

ReducedStructure reduced_from_vertices(int n, const MeanVertex& v0,
                                       const MeanVertex& v1);

}  // namespace robagg

#endif  // ROBAGG_FEASIBLE_HPP_
