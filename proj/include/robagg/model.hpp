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

#ifndef ROBAGG_MODEL_HPP_
#define ROBAGG_MODEL_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "robagg/rational.hpp"

namespace robagg {

// A binary-state guessing instance. mu is the prior of state 1, p1 < 1/2 < p2
// are the marginal posteriors after a low/high signal, and (a, b) are the
// derived per-agent probabilities of a high report conditional on state 0 and
// state 1. Immutable after construction; build via build_scenario.
struct Scenario {
  Rat mu;
  Rat p1;
  Rat p2;
  int n = 0;
  Rat a;
  Rat b;
};

// A grid function f: {0, 1/n, ..., 1} -> [0,1]; values[k] = f(k/n).
struct AggregationRule {
  int n = 0;
  std::vector<Rat> values;
};

// State-conditional distributions over the fraction of high reports.
// dist0[k] and dist1[k] are the weights on grid point k/n.
struct ReducedStructure {
  int n = 0;
  std::vector<Rat> dist0;
  std::vector<Rat> dist1;
};

// A point of the polytope C: joint mass on (state, set of high reporters).
// Subsets are bitmasks over agents 0..n-1; absent keys carry zero mass.
struct FullStructure {
  int n = 0;
  std::map<std::uint32_t, Rat> mass0;
  std::map<std::uint32_t, Rat> mass1;
};

// Finite-state instance with a default action worth 0 and an optional action
// worth u(omega). a_high[w] is the per-agent probability of the high signal
// conditional on state w; in_omega_h[w] iff u(w) >= 0.
struct MultiScenario {
  std::vector<std::string> states;
  std::vector<Rat> mu;
  std::vector<Rat> u;
  std::vector<Rat> p_low;
  std::vector<Rat> p_high;
  int n = 0;
  std::vector<Rat> a_high;
  std::vector<bool> in_omega_h;

  int num_states() const { return static_cast<int>(states.size()); }
};

// Marginal distribution of a single agent's posterior: (posterior, weight)
// atoms with weights summing to one.
struct PosteriorMarginal {
  std::vector<std::pair<Rat, Rat>> atoms;
};

// Derives (a, b) from (mu, p1, p2) and validates all Scenario invariants.
// Throws DegenerateScenario when p1 == p2, OrderingViolation unless
// p1 < 1/2 < p2, PriorOutOfRange unless p1 < mu < p2.
Scenario build_scenario(const Rat& mu, const Rat& p1, const Rat& p2, int n);

// Inverse direction: reconstructs (p1, p2) by Bayes rule from the reporting
// probabilities (a, b) and builds the scenario. Used by sweeps and tests that
// pin (a, b) exactly.
Scenario scenario_from_reporting(const Rat& mu, const Rat& a, const Rat& b,
                                 int n);

// Collapses a general posterior marginal to the binary-posterior scenario
// with p1 = E[q | q < 1/2] and p2 = E[q | q >= 1/2].
Scenario binarize_posteriors(const PosteriorMarginal& marginal, const Rat& mu,
                             int n);

// Builds a MultiScenario, deriving a_high per state and checking that mu is
// an interior mixture of p_low and p_high.
MultiScenario build_multiscenario(const std::vector<std::string>& states,
                                  const std::vector<Rat>& mu,
                                  const std::vector<Rat>& u,
                                  const std::vector<Rat>& p_low,
                                  const std::vector<Rat>& p_high, int n);

// Assembles a MultiScenario directly from per-state high-signal
// probabilities, bypassing the signal-consistency checks. Degenerate inputs
// (single state, a_high hitting 0 or 1) are allowed here.
MultiScenario multiscenario_from_a(const std::vector<Rat>& mu,
                                   const std::vector<Rat>& u,
                                   const std::vector<Rat>& a_high, int n);

AggregationRule make_rule(int n, std::vector<Rat> values);
AggregationRule dictator_rule(int n);
// f(nu) = 1 iff nu >= tau.
AggregationRule threshold_rule(int n, const Rat& tau);

ReducedStructure make_reduced(int n, std::vector<Rat> dist0,
                              std::vector<Rat> dist1);

void validate_rule(const AggregationRule& rule);
void validate_reduced(const ReducedStructure& rs);

}  // namespace robagg

#endif  // ROBAGG_MODEL_HPP_
