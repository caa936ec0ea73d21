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

#ifndef ROBAGG_OPTIMIZE_HPP_
#define ROBAGG_OPTIMIZE_HPP_

#include <optional>
#include <vector>

#include "robagg/evaluate.hpp"
#include "robagg/model.hpp"
#include "robagg/rational.hpp"

namespace robagg {

struct MixtureAtom {
  Rat weight;
  int v0 = 0;
  int v1 = 0;
  ReducedStructure structure;
};

struct OptimalRuleResult {
  AggregationRule rule;  // lexicographically smallest optimal rule
  Rat regret;
  std::vector<MixtureAtom> mixture;  // optimal adversary mixed strategy
  int constraints_generated = 0;
};

// Solves the zero-sum regret game over the reduced polytope: min over rules
// of max over adversary vertices, by LP with exact constraint generation.
// The certificate is exact: at return, the best response to the rule attains
// the LP value.
OptimalRuleResult optimal_regret_rule(const Scenario& s);

struct FaceRange {
  Rat lo;
  Rat hi;
  bool degenerate() const { return lo == hi; }
};

struct DictatorReport {
  bool condition = false;  // 1/n <= a < b <= (n-1)/n
  std::optional<Rat> threshold_n;  // smallest agent count that satisfies the
                                   // condition for these marginals; nullopt
                                   // when no finite count does (p1=0 or p2=1)
  Rat lp_regret;
  Rat closed_form;  // 1 - (1-mu)(1-a) - mu b
  bool matches_closed_form = false;
  AggregationRule rule;
  std::vector<FaceRange> ranges;  // per grid point, over the optimal face
  bool unique = false;            // all ranges degenerate
};

DictatorReport verify_random_dictator(const Scenario& s);

struct TwoAgentCase {
  int id = 0;
  Rat f_half;
  Rat regret;
};

struct TwoAgentResult {
  int case_id = 0;  // lowest-numbered applicable case
  Rat f_half;
  Rat regret;
  std::vector<TwoAgentCase> applicable;
  AggregationRule rule() const;  // (0, f_half, 1)
};

// Closed-form optimal rule and regret for n = 2 and uniform prior,
// classified into the eight parameter regions. Requires 0 <= a < b <= 1.
// On region boundaries all applicable regret values agree (asserted).
TwoAgentResult two_agent_closed_form(const Rat& a, const Rat& b);

// Region id alone (for sweeps).
int two_agent_region(const Rat& a, const Rat& b);

struct GapCheckReport {
  Rat lp_regret;
  Rat witness_gap;  // E_phi[P*(x)] - P*(E_phi[x]) over the lifted mixture
  bool equal = false;
  std::vector<Rat> weights;
  std::vector<FullStructure> lifts;
  FullStructure average;
};

// Certifies the concavification identity: the optimal adversary mixture,
// lifted into C, witnesses regret = cav[P*] - P* at the mixture average.
// Requires n <= 10.
GapCheckReport concavification_gap_check(const Scenario& s);

struct MultiMixtureAtom {
  Rat weight;
  std::vector<int> tuple;  // vertex index per state
};

struct MultiOptimalResult {
  AggregationRule rule;
  Rat regret;
  std::vector<MultiMixtureAtom> mixture;
  int constraints_generated = 0;
  bool condition = false;  // every a_w in [1/n, (n-1)/n]
  Rat closed_form;         // sum_{H} mu u - sum mu a u
  bool matches_closed_form = false;
  std::vector<FaceRange> ranges;
  bool unique = false;
};

MultiOptimalResult optimal_regret_rule_multistate(const MultiScenario& ms);

}  // namespace robagg

#endif  // ROBAGG_OPTIMIZE_HPP_
