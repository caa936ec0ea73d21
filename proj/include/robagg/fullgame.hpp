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

#ifndef ROBAGG_FULLGAME_HPP_
#define ROBAGG_FULLGAME_HPP_

#include <utility>
#include <vector>

#include "robagg/model.hpp"
#include "robagg/optimize.hpp"
#include "robagg/rational.hpp"

namespace robagg {

// Identity-aware aggregation rule: values[D] is the probability of guessing
// state 1 when exactly the agents in bitmask D report high. 2^n entries.
struct SetRule {
  int n = 0;
  std::vector<Rat> values;
};

SetRule set_rule_from_count(const AggregationRule& rule);
// Averages over equally-sized reporting sets (the symmetrization that keeps
// optimality under agent permutations).
AggregationRule symmetrize(const SetRule& rule);

struct FullBestResponse {
  FullStructure structure;
  Rat value;
};

// Max over x in C of P*(x) - P(f, x) with the count-based Bayesian benchmark:
// one LP per sign pattern over count levels, best pattern wins. n <= 10.
FullBestResponse adversary_best_response_count(const AggregationRule& rule,
                                               const Scenario& s);

// Same with the set-observing Bayesian (P^ = sum_D max{x0_D, x1_D}) and a
// set-based DM payoff; 2^(2^n) patterns, so n <= 3.
FullBestResponse adversary_best_response_set(const SetRule& rule,
                                             const Scenario& s);

enum class GameMode { count, set };

struct DoubleOracleResult {
  GameMode mode = GameMode::count;
  Rat value;
  AggregationRule count_rule;  // count mode
  SetRule set_rule;            // set mode
  std::vector<std::pair<Rat, FullStructure>> mixture;
  int iterations = 0;
  // (restricted value, best-response value) per iteration; the true value is
  // sandwiched between the two, and the loop stops at exact equality.
  std::vector<std::pair<Rat, Rat>> bounds_history;
};

// Grows the adversary's structure set by best responses until the restricted
// game value is certified exactly. The DM side stays an LP over rule values.
DoubleOracleResult double_oracle(const Scenario& s, GameMode mode);

struct AnonymityReport {
  Rat reduced_value;
  Rat count_value;
  Rat set_value;
  bool equal = false;
  SetRule set_rule;
  AggregationRule symmetrized;
  bool symmetrized_optimal = false;
};

// Certifies that anonymity is without loss: reduced-game, count-mode and
// set-mode values coincide and the symmetrized set rule stays optimal.
// n <= 3.
AnonymityReport anonymity_equivalence(const Scenario& s);

}  // namespace robagg

#endif  // ROBAGG_FULLGAME_HPP_
