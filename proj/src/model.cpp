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

#include "robagg/model.hpp"

#include <algorithm>

#include "robagg/error.hpp"

namespace robagg {

namespace {

const Rat kZero(0);
const Rat kOne(1);
const Rat kHalf = rat(1, 2);

void check_probability(const Rat& p, const std::string& name) {
  if (p < kZero || p > kOne)
    fail(Errc::invalid_argument, name + " = " + rat_str(p) + " not in [0,1]");
}

}  // namespace

Scenario build_scenario(const Rat& mu, const Rat& p1, const Rat& p2, int n) {
  if (n < 1) fail(Errc::invalid_argument, "agent count must be positive");
  check_probability(mu, "mu");
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  if (p1 == p2)
    fail(Errc::degenerate_scenario,
         "p1 == p2 == " + rat_str(p1) + ": signals carry no information");
  if (!(p1 < kHalf && kHalf < p2))
    fail(Errc::ordering_violation,
         "need p1 < 1/2 < p2, got p1 = " + rat_str(p1) +
             ", p2 = " + rat_str(p2));
  if (!(p1 < mu && mu < p2))
    fail(Errc::prior_out_of_range,
         "need p1 < mu < p2, got mu = " + rat_str(mu));

  Scenario s;
  s.mu = mu;
  s.p1 = p1;
  s.p2 = p2;
  s.n = n;
  s.a = (kOne - p2) * (mu - p1) / ((kOne - mu) * (p2 - p1));
  s.b = p2 * (mu - p1) / (mu * (p2 - p1));
  if (s.a < kZero || s.a > kOne || s.b < kZero || s.b > kOne || !(s.a < s.b))
    fail(Errc::internal, "derived (a, b) out of range");  // unreachable
  return s;
}

Scenario scenario_from_reporting(const Rat& mu, const Rat& a, const Rat& b,
                                 int n) {
  check_probability(a, "a");
  check_probability(b, "b");
  if (!(a < b)) fail(Errc::invalid_argument, "need a < b");
  if (mu <= kZero || mu >= kOne)
    fail(Errc::invalid_argument, "need 0 < mu < 1");
  // Posteriors by Bayes rule from the report-conditional probabilities.
  Rat high = mu * b + (kOne - mu) * a;
  Rat low = kOne - high;
  if (high == kZero || low == kZero)
    fail(Errc::degenerate_scenario, "a report has zero prior probability");
  Rat p2 = mu * b / high;
  Rat p1 = mu * (kOne - b) / low;
  return build_scenario(mu, p1, p2, n);
}

Scenario binarize_posteriors(const PosteriorMarginal& marginal, const Rat& mu,
                             int n) {
  if (marginal.atoms.empty()) fail(Errc::invalid_argument, "empty marginal");
  Rat total(0), mean(0);
  Rat w_low(0), w_high(0), m_low(0), m_high(0);
  for (const auto& [q, w] : marginal.atoms) {
    check_probability(q, "posterior atom");
    if (w < kZero) fail(Errc::invalid_argument, "negative atom weight");
    total += w;
    mean += q * w;
    if (q < kHalf) {
      w_low += w;
      m_low += q * w;
    } else {
      w_high += w;
      m_high += q * w;
    }
  }
  if (total != kOne)
    fail(Errc::invalid_argument,
         "atom weights sum to " + rat_str(total) + ", expected 1");
  if (w_low == kZero || w_high == kZero)
    fail(Errc::one_sided_marginal,
         "marginal needs positive weight on both sides of 1/2");
  if (mean != mu)
    fail(Errc::prior_mismatch, "marginal mean " + rat_str(mean) +
                                   " differs from prior " + rat_str(mu));
  return build_scenario(mu, m_low / w_low, m_high / w_high, n);
}

MultiScenario build_multiscenario(const std::vector<std::string>& states,
                                  const std::vector<Rat>& mu,
                                  const std::vector<Rat>& u,
                                  const std::vector<Rat>& p_low,
                                  const std::vector<Rat>& p_high, int n) {
  const size_t k = states.size();
  if (k == 0) fail(Errc::invalid_argument, "empty state space");
  if (mu.size() != k || u.size() != k || p_low.size() != k ||
      p_high.size() != k)
    fail(Errc::size_mismatch, "state-indexed vectors disagree on length");
  if (n < 1) fail(Errc::invalid_argument, "agent count must be positive");

  Rat mu_sum(0), pl_sum(0), ph_sum(0);
  for (size_t w = 0; w < k; ++w) {
    if (mu[w] <= kZero)
      fail(Errc::zero_denominator,
           "state '" + states[w] + "' has non-positive prior weight");
    if (p_low[w] < kZero || p_high[w] < kZero)
      fail(Errc::invalid_argument, "negative posterior weight");
    mu_sum += mu[w];
    pl_sum += p_low[w];
    ph_sum += p_high[w];
  }
  if (mu_sum != kOne || pl_sum != kOne || ph_sum != kOne)
    fail(Errc::invalid_argument, "mu, pL, pH must each sum to 1");

  Rat eu_high(0), eu_low(0);
  for (size_t w = 0; w < k; ++w) {
    eu_high += p_high[w] * u[w];
    eu_low += p_low[w] * u[w];
  }
  if (!(eu_high > kZero))
    fail(Errc::sign_violation,
         "expected utility under pH is " + rat_str(eu_high) + ", need > 0");
  if (!(eu_low < kZero))
    fail(Errc::sign_violation,
         "expected utility under pL is " + rat_str(eu_low) + ", need < 0");

  // mu must equal alpha*pH + (1-alpha)*pL for a single alpha in (0,1).
  bool have_alpha = false;
  Rat alpha;
  for (size_t w = 0; w < k; ++w) {
    Rat den = p_high[w] - p_low[w];
    if (den == kZero) {
      if (mu[w] != p_low[w])
        fail(Errc::mixture_violation,
             "state '" + states[w] + "' breaks the pL/pH mixture");
      continue;
    }
    Rat alpha_w = (mu[w] - p_low[w]) / den;
    if (!have_alpha) {
      alpha = alpha_w;
      have_alpha = true;
    } else if (alpha != alpha_w) {
      fail(Errc::mixture_violation,
           "mixture weight is not consistent across states");
    }
  }
  if (!have_alpha) fail(Errc::zero_denominator, "pL == pH everywhere");
  if (alpha <= kZero || alpha >= kOne)
    fail(Errc::mixture_violation,
         "mixture weight " + rat_str(alpha) + " not in (0,1)");

  std::vector<Rat> a_high(k);
  for (size_t w = 0; w < k; ++w) {
    if (p_high[w] == p_low[w])
      fail(Errc::zero_denominator,
           "state '" + states[w] + "' has pH == pL with positive prior");
    a_high[w] = p_high[w] * (mu[w] - p_low[w]) / (mu[w] * (p_high[w] - p_low[w]));
    if (a_high[w] < kZero || a_high[w] > kOne)
      fail(Errc::invalid_argument,
           "derived a for state '" + states[w] + "' leaves [0,1]");
  }

  MultiScenario ms;
  ms.states = states;
  ms.mu = mu;
  ms.u = u;
  ms.p_low = p_low;
  ms.p_high = p_high;
  ms.n = n;
  ms.a_high = std::move(a_high);
  ms.in_omega_h.resize(k);
  for (size_t w = 0; w < k; ++w) ms.in_omega_h[w] = (u[w] >= kZero);
  return ms;
}

MultiScenario multiscenario_from_a(const std::vector<Rat>& mu,
                                   const std::vector<Rat>& u,
                                   const std::vector<Rat>& a_high, int n) {
  const size_t k = mu.size();
  if (k == 0) fail(Errc::invalid_argument, "empty state space");
  if (u.size() != k || a_high.size() != k)
    fail(Errc::size_mismatch, "state-indexed vectors disagree on length");
  if (n < 1) fail(Errc::invalid_argument, "agent count must be positive");
  Rat mu_sum(0);
  for (size_t w = 0; w < k; ++w) {
    if (mu[w] <= kZero) fail(Errc::invalid_argument, "prior weights positive");
    if (a_high[w] < kZero || a_high[w] > kOne)
      fail(Errc::invalid_argument, "a values must lie in [0,1]");
    mu_sum += mu[w];
  }
  if (mu_sum != kOne) fail(Errc::invalid_argument, "mu must sum to 1");

  MultiScenario ms;
  ms.states.reserve(k);
  for (size_t w = 0; w < k; ++w) ms.states.push_back("s" + std::to_string(w));
  ms.mu = mu;
  ms.u = u;
  ms.n = n;
  ms.a_high = a_high;
  ms.in_omega_h.resize(k);
  for (size_t w = 0; w < k; ++w) ms.in_omega_h[w] = (u[w] >= kZero);
  return ms;
}

AggregationRule make_rule(int n, std::vector<Rat> values) {
  AggregationRule rule{n, std::move(values)};
  validate_rule(rule);
  return rule;
}

AggregationRule dictator_rule(int n) {
  AggregationRule rule;
  rule.n = n;
  rule.values.reserve(n + 1);
  for (int k = 0; k <= n; ++k) rule.values.push_back(rat(k, n));
  return rule;
}

AggregationRule threshold_rule(int n, const Rat& tau) {
  AggregationRule rule;
  rule.n = n;
  rule.values.reserve(n + 1);
  for (int k = 0; k <= n; ++k)
    rule.values.push_back(rat(k, n) >= tau ? Rat(1) : Rat(0));
  return rule;
}

ReducedStructure make_reduced(int n, std::vector<Rat> dist0,
                              std::vector<Rat> dist1) {
  ReducedStructure rs{n, std::move(dist0), std::move(dist1)};
  validate_reduced(rs);
  return rs;
}

void validate_rule(const AggregationRule& rule) {
  if (rule.n < 1) fail(Errc::invalid_argument, "rule needs n >= 1");
  if (rule.values.size() != static_cast<size_t>(rule.n + 1))
    fail(Errc::size_mismatch, "rule needs n+1 grid values");
  for (const Rat& v : rule.values)
    if (v < kZero || v > kOne)
      fail(Errc::invalid_argument, "rule value " + rat_str(v) +
                                       " not in [0,1]");
}

void validate_reduced(const ReducedStructure& rs) {
  if (rs.n < 1) fail(Errc::invalid_argument, "structure needs n >= 1");
  if (rs.dist0.size() != static_cast<size_t>(rs.n + 1) ||
      rs.dist1.size() != static_cast<size_t>(rs.n + 1))
    fail(Errc::size_mismatch, "distributions need n+1 grid weights");
  Rat s0(0), s1(0);
  for (int k = 0; k <= rs.n; ++k) {
    if (rs.dist0[k] < kZero || rs.dist1[k] < kZero)
      fail(Errc::invalid_argument, "negative probability weight");
    s0 += rs.dist0[k];
    s1 += rs.dist1[k];
  }
  if (s0 != kOne || s1 != kOne)
    fail(Errc::invalid_argument, "distributions must sum to 1 exactly");
}

}  // namespace robagg
