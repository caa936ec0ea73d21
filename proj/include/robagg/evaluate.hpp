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

#ifndef ROBAGG_EVALUATE_HPP_
#define ROBAGG_EVALUATE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "robagg/feasible.hpp"
#include "robagg/model.hpp"
#include "robagg/rational.hpp"

namespace robagg {

// P(f, pi): probability the rule guesses the state correctly.
Rat dm_success(const AggregationRule& rule, const ReducedStructure& rs,
               const Rat& mu);

// P*(pi): success probability of the Bayesian responder who knows pi.
Rat bayes_success(const ReducedStructure& rs, const Rat& mu);

// P*(pi) - P(f, pi); nonnegative for every rule and structure.
Rat regret_at(const AggregationRule& rule, const ReducedStructure& rs,
              const Rat& mu);

// The Bayesian best-response rule for a known structure, ties toward state 1.
AggregationRule bayes_responder(const ReducedStructure& rs, const Rat& mu);

// Vertex machinery for one scenario, shared by the evaluators and the
// optimizer's constraint generation. Regret and the ratio objective are
// convex over the product polytope, so scanning extreme pairs is exact; the
// scan prunes with the disjoint-support upper bound S0 + S1.
class AdversaryVertices {
 public:
  explicit AdversaryVertices(const Scenario& s);

  const Scenario& scenario() const { return s_; }
  const std::vector<MeanVertex>& side0() const { return v0_; }
  const std::vector<MeanVertex>& side1() const { return v1_; }

  struct BestResponse {
    Rat value;
    int v0 = 0;
    int v1 = 0;
  };

  // Max regret over all vertex pairs; argmax is the first pair in canonical
  // (v0-major) order attaining it.
  BestResponse best_response(const AggregationRule& rule) const;

  // Min of P(f, .) over vertex pairs (separable, so computed per side).
  Rat min_dm_success(const AggregationRule& rule) const;

  // True iff some pair has lambda * P* - P > 0.
  bool ratio_violated(const AggregationRule& rule, const Rat& lambda) const;

  Rat regret_at_pair(const AggregationRule& rule, int v0, int v1) const;
  ReducedStructure pair(int v0, int v1) const;

 private:
  struct Scores;
  Scores scores(const AggregationRule& rule) const;
  Rat penalty(int v0, int v1) const;  // overlap term: P* = S0 + S1 + dm stuff

  Scenario s_;
  std::vector<MeanVertex> v0_, v1_;
};

// Reg(f) = max over feasible structures, with the witness structure.
std::pair<Rat, ReducedStructure> worst_case_regret(const AggregationRule& rule,
                                                   const Scenario& s);

// min over structures of P(f, .).
Rat minimax_value(const AggregationRule& rule, const Scenario& s);

// 1 - (1-mu)(1 - cav[f](a)) - mu vex[f](b).
Rat regret_bound_cavvex(const AggregationRule& rule, const Scenario& s);

// Support points of the bound above: the cav hull segment at a and the vex
// hull segment at b. When the two supports are disjoint the bound is tight.
struct CavVexSupport {
  std::pair<int, int> cav_at_a;
  std::pair<int, int> vex_at_b;
  bool disjoint;
};
CavVexSupport regret_bound_support(const AggregationRule& rule,
                                   const Scenario& s);

// min over structures of P(f,.)/P*(.) by bisection; result within tol.
Rat approx_ratio(const AggregationRule& rule, const Scenario& s,
                 const Rat& tol);

// Multi-state evaluations. dists holds one distribution per state.
Rat multistate_dm_utility(const AggregationRule& rule,
                          const std::vector<std::vector<Rat>>& dists,
                          const MultiScenario& ms);
Rat multistate_bayes_utility(const std::vector<std::vector<Rat>>& dists,
                             const MultiScenario& ms);

struct MultistateWorstCase {
  Rat value;
  std::vector<std::vector<Rat>> tuple;  // witness, one distribution per state
};
MultistateWorstCase multistate_worst_case_regret(const AggregationRule& rule,
                                                 const MultiScenario& ms);

// Branch-and-bound best response over per-state vertex tuples; used both by
// the public worst case above and by the multi-state optimizer.
struct MultiTupleBest {
  Rat value;
  std::vector<int> tuple;  // vertex index per state
};
MultiTupleBest multistate_best_response(
    const AggregationRule& rule, const MultiScenario& ms,
    const std::vector<std::vector<MeanVertex>>& verts);

Rat multistate_tuple_regret(const AggregationRule& rule,
                            const MultiScenario& ms,
                            const std::vector<std::vector<MeanVertex>>& verts,
                            const std::vector<int>& tuple);

}  // namespace robagg

#endif  // ROBAGG_EVALUATE_HPP_
