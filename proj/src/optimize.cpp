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

#include "robagg/optimize.hpp"

#include <algorithm>
#include <set>

#include "robagg/error.hpp"
#include "robagg/lp.hpp"

namespace robagg {

namespace {

const Rat kZero(0);
const Rat kOne(1);
const Rat kHalf = rat(1, 2);

// Restricted zero-sum master for the reduced regret game. The adversary's
// constraint set grows by exact best responses until the restricted value is
// certified against the full vertex set.
class RegretMaster {
 public:
  explicit RegretMaster(const Scenario& s) : s_(s), verts_(s) {
    seed();
    solve_master();
  }

  const Rat& value() const { return value_; }
  const AdversaryVertices& vertices() const { return verts_; }
  int constraints_generated() const { return static_cast<int>(pairs_.size()); }

  std::vector<MixtureAtom> mixture() const {
    std::vector<MixtureAtom> atoms;
    Rat total(0);
    for (size_t r = 0; r < pairs_.size(); ++r)
      if (duals_[r] > kZero) total += duals_[r];
    if (total == kZero) {
      // Regret zero: any single structure witnesses the value.
      atoms.push_back({Rat(1), pairs_[0].first, pairs_[0].second,
                       verts_.pair(pairs_[0].first, pairs_[0].second)});
      return atoms;
    }
    for (size_t r = 0; r < pairs_.size(); ++r) {
      if (duals_[r] <= kZero) continue;
      atoms.push_back({Rat(duals_[r] / total), pairs_[r].first,
                       pairs_[r].second,
                       verts_.pair(pairs_[r].first, pairs_[r].second)});
    }
    return atoms;
  }

  // Lexicographically smallest rule on the optimal face, certified against
  // the full vertex set.
  AggregationRule lex_min_rule() {
    const int n = s_.n;
    for (;;) {
      std::vector<std::optional<Rat>> pins(n + 1);
      for (int k = 0; k <= n; ++k) {
        lp::Solution sol = face_solve(k, /*maximize=*/false, pins);
        pins[k] = sol.objective;
      }
      AggregationRule rule;
      rule.n = n;
      for (int k = 0; k <= n; ++k) rule.values.push_back(*pins[k]);
      if (certify(rule)) return rule;
    }
  }

  FaceRange face_range(int k) {
    std::vector<std::optional<Rat>> no_pins(s_.n + 1);
    FaceRange out;
    for (;;) {
      lp::Solution sol = face_solve(k, /*maximize=*/false, no_pins);
      if (certify(rule_from(sol, 0))) {
        out.lo = sol.objective;
        break;
      }
    }
    for (;;) {
      lp::Solution sol = face_solve(k, /*maximize=*/true, no_pins);
      if (certify(rule_from(sol, 0))) {
        out.hi = sol.objective;
        break;
      }
    }
    return out;
  }

 private:
  void seed() {
    // Fully-correlated pair: mass at the extreme fractions on both sides.
    add_pair(find_extreme_vertex(verts_.side0(), s_.n),
             find_extreme_vertex(verts_.side1(), s_.n));
  }

  // The {0, 1}-supported vertex (the fully-correlated side) when the mean is
  // interior; the lone point mass otherwise.
  static int find_extreme_vertex(const std::vector<MeanVertex>& side, int n) {
    for (size_t i = 0; i < side.size(); ++i)
      if (side[i].i == 0 && side[i].j == n) return static_cast<int>(i);
    return 0;
  }

  void add_pair(int v0, int v1) {
    if (!pair_set_.insert({v0, v1}).second)
      fail(Errc::internal, "duplicate constraint generated");
    pairs_.push_back({v0, v1});
  }

  // Constraint row for one adversary pair:
  //   t + sum_k (mu v1(k) - (1-mu) v0(k)) f_k >= P*(pair) - (1-mu).
  void pair_row(int v0, int v1, std::vector<Rat>* coeffs, Rat* rhs,
                bool with_t) const {
    const int n = s_.n;
    coeffs->assign(n + 1 + (with_t ? 1 : 0), Rat(0));
    const int off = with_t ? 1 : 0;
    const MeanVertex& a = verts_.side0()[v0];
    const MeanVertex& b = verts_.side1()[v1];
    const Rat mu0 = kOne - s_.mu;
    (*coeffs)[off + a.i] -= mu0 * a.wi;
    if (a.j != a.i) (*coeffs)[off + a.j] -= mu0 * a.wj;
    (*coeffs)[off + b.i] += s_.mu * b.wi;
    if (b.j != b.i) (*coeffs)[off + b.j] += s_.mu * b.wj;
    if (with_t) (*coeffs)[0] = 1;
    *rhs = bayes_success(verts_.pair(v0, v1), s_.mu) - mu0;
  }

  void solve_master() {
    const int n = s_.n;
    for (;;) {
      lp::Program prog;
      prog.sense = lp::Sense::minimize;
      prog.add_var(Rat(0), Rat(1), Rat(1));                       // t
      for (int k = 0; k <= n; ++k) prog.add_var(Rat(0), Rat(1));  // f_k
      for (const auto& [v0, v1] : pairs_) {
        std::vector<Rat> coeffs;
        Rat rhs;
        pair_row(v0, v1, &coeffs, &rhs, /*with_t=*/true);
        prog.add_row(std::move(coeffs), lp::Rel::ge, std::move(rhs));
      }
      lp::Solution sol = lp::solve(prog);
      if (sol.status != lp::Status::optimal)
        fail(Errc::internal, "restricted regret game failed to solve");
      AggregationRule rule = rule_from(sol, 1);
      value_ = sol.objective;
      auto br = verts_.best_response(rule);
      if (br.value <= value_) {
        duals_ = sol.dual;
        master_rule_ = std::move(rule);
        return;
      }
      add_pair(br.v0, br.v1);
    }
  }

  AggregationRule rule_from(const lp::Solution& sol, int offset) const {
    AggregationRule rule;
    rule.n = s_.n;
    rule.values.assign(sol.primal.begin() + offset, sol.primal.end());
    return rule;
  }

  // Optimizes f_k over the current restricted optimal face
  // {f : Reg(f, v) <= value_ for v in pairs_}, with optional pinned values.
  lp::Solution face_solve(int k, bool maximize,
                          const std::vector<std::optional<Rat>>& pins) {
    const int n = s_.n;
    lp::Program prog;
    prog.sense = maximize ? lp::Sense::maximize : lp::Sense::minimize;
    for (int i = 0; i <= n; ++i) {
      Rat lo = pins[i] ? *pins[i] : Rat(0);
      Rat hi = pins[i] ? *pins[i] : Rat(1);
      prog.add_var(lo, hi, i == k ? Rat(1) : Rat(0));
    }
    for (const auto& [v0, v1] : pairs_) {
      std::vector<Rat> coeffs;
      Rat rhs;
      pair_row(v0, v1, &coeffs, &rhs, /*with_t=*/false);
      prog.add_row(std::move(coeffs), lp::Rel::ge, rhs - value_);
    }
    lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal)
      fail(Errc::internal, "face probe failed to solve");
    return sol;
  }

  // True iff the rule lies on the true optimal face; otherwise the violating
  // vertex joins the constraint set.
  bool certify(const AggregationRule& rule) {
    auto br = verts_.best_response(rule);
    if (br.value <= value_) return true;
    add_pair(br.v0, br.v1);
    return false;
  }

  Scenario s_;
  AdversaryVertices verts_;
  std::vector<std::pair<int, int>> pairs_;
  std::set<std::pair<int, int>> pair_set_;
  Rat value_;
  std::vector<Rat> duals_;
  AggregationRule master_rule_;
};

Rat dictator_closed_form(const Scenario& s) {
  return kOne - (kOne - s.mu) * (kOne - s.a) - s.mu * s.b;
}

bool dictator_condition(const Scenario& s) {
  return rat(1, s.n) <= s.a && s.b <= rat(s.n - 1, s.n);
}

}  // namespace

OptimalRuleResult optimal_regret_rule(const Scenario& s) {
  RegretMaster master(s);
  OptimalRuleResult out;
  out.regret = master.value();
  out.rule = master.lex_min_rule();
  out.mixture = master.mixture();
  out.constraints_generated = master.constraints_generated();
  return out;
}

DictatorReport verify_random_dictator(const Scenario& s) {
  DictatorReport report;
  report.condition = dictator_condition(s);
  // Smallest n with 1/n <= a and b <= (n-1)/n, i.e. n >= max{1/a, 1/(1-b)};
  // no finite n works when a = 0 (p2 = 1) or b = 1 (p1 = 0).
  if (s.a > kZero && s.b < kOne)
    report.threshold_n = std::max(Rat(kOne / s.a), Rat(kOne / (kOne - s.b)));
  report.closed_form = dictator_closed_form(s);

  RegretMaster master(s);
  report.lp_regret = master.value();
  report.rule = master.lex_min_rule();
  report.matches_closed_form = (report.lp_regret == report.closed_form);
  report.ranges.reserve(s.n + 1);
  bool unique = true;
  for (int k = 0; k <= s.n; ++k) {
    FaceRange r = master.face_range(k);
    unique = unique && r.degenerate();
    report.ranges.push_back(std::move(r));
  }
  report.unique = unique;
  return report;
}

AggregationRule TwoAgentResult::rule() const {
  AggregationRule rule;
  rule.n = 2;
  rule.values = {Rat(0), f_half, Rat(1)};
  return rule;
}

TwoAgentResult two_agent_closed_form(const Rat& a, const Rat& b) {
  if (a < kZero || b > kOne || !(a < b))
    fail(Errc::invalid_argument, "need 0 <= a < b <= 1");

  // Region conditions and closed forms, uniform prior, two agents.
  std::vector<TwoAgentCase> applicable;
  auto add = [&](int id, Rat f_half, Rat reg) {
    applicable.push_back({id, std::move(f_half), std::move(reg)});
  };
  const Rat two(2);
  if (a < b && b <= kHalf) {
    if (two * a <= b)
      add(1, (a + two * b) / (two * (a + b)),
          a * (a + two * b) / (two * (a + b)));
    if (two * a >= b)
      add(2, (3 * b - a) / (two * (a + b)),
          (a * a + 4 * a * b - b * b) / (two * (a + b)));
  }
  if (kHalf <= a && a < b) {
    if (kOne + a >= two * b)
      add(3, (two - 3 * a + b) / (two * (two - a - b)),
          (-(a * a) + 4 * a * b + b * b - two * a - 6 * b + 4) /
              (two * (two - a - b)));
    if (kOne + a <= two * b)
      add(4, (3 - two * a - b) / (two * (two - a - b)),
          (kOne - b) * (3 - two * a - b) / (two * (two - a - b)));
  }
  if (a <= kHalf && kHalf <= b) {
    const Rat mid = (a + kOne) / two;
    if (b >= std::max(Rat(two * a), mid))
      add(5, (kOne - b) / (kOne + a - b), a * (kOne - b) / (kOne + a - b));
    if (two * a >= b && b >= mid)
      add(6, (two - two * a - b) / (two * (kOne + a - b)),
          (kOne - b) * (4 * a - b) / (two * (kOne + a - b)));
    if (mid >= b && b >= two * a)
      add(7, (-kOne + a + two * b) / (two * (kOne + a - b)),
          a * (3 + a - 4 * b) / (two * (kOne + a - b)));
    if (b <= std::min(Rat(two * a), mid))
      add(8, (3 - a - 3 * b) / (two * (kOne + a - b)),
          (a * a - 6 * a * b + b * b + 5 * a - b) / (two * (kOne + a - b)));
  }
  if (applicable.empty())
    fail(Errc::no_region, "no region matched (a, b) = (" + rat_str(a) + ", " +
                              rat_str(b) + ")");
  for (const TwoAgentCase& c : applicable)
    if (c.regret != applicable.front().regret)
      fail(Errc::internal, "overlapping regions disagree on the regret");

  TwoAgentResult out;
  out.case_id = applicable.front().id;
  out.f_half = applicable.front().f_half;
  out.regret = applicable.front().regret;
  out.applicable = std::move(applicable);
  return out;
}

int two_agent_region(const Rat& a, const Rat& b) {
  return two_agent_closed_form(a, b).case_id;
}

GapCheckReport concavification_gap_check(const Scenario& s) {
  if (s.n > 10) fail(Errc::size_cap, "gap check capped at n <= 10");
  OptimalRuleResult opt = optimal_regret_rule(s);

  GapCheckReport report;
  report.lp_regret = opt.regret;
  report.average.n = s.n;

  // P* on a full structure, by count level.
  auto pstar_full = [&](const FullStructure& fs) {
    std::vector<Rat> c0(s.n + 1, Rat(0)), c1(s.n + 1, Rat(0));
    for (const auto& [set, w] : fs.mass0) c0[__builtin_popcount(set)] += w;
    for (const auto& [set, w] : fs.mass1) c1[__builtin_popcount(set)] += w;
    Rat total(0);
    for (int k = 0; k <= s.n; ++k) total += std::max(c0[k], c1[k]);
    return total;
  };

  Rat expected_pstar(0);
  for (const MixtureAtom& atom : opt.mixture) {
    FullStructure lift = lift_to_full(atom.structure, s);
    if (!membership_c(lift, s))
      fail(Errc::internal, "lift left the polytope");  // contradicts the LP
    expected_pstar += atom.weight * pstar_full(lift);
    for (const auto& [set, w] : lift.mass0)
      report.average.mass0[set] += atom.weight * w;
    for (const auto& [set, w] : lift.mass1)
      report.average.mass1[set] += atom.weight * w;
    report.weights.push_back(atom.weight);
    report.lifts.push_back(std::move(lift));
  }
  report.witness_gap = expected_pstar - pstar_full(report.average);
  report.equal = (report.witness_gap == report.lp_regret);
  return report;
}

namespace {

// Multi-state analogue of RegretMaster over per-state vertex tuples.
class MultiMaster {
 public:
  explicit MultiMaster(const MultiScenario& ms)
      : ms_(ms), verts_(multistate_vertex_supports(ms)) {
    seed();
    solve_master();
  }

  const Rat& value() const { return value_; }
  int constraints_generated() const { return static_cast<int>(tuples_.size()); }

  std::vector<MultiMixtureAtom> mixture() const {
    std::vector<MultiMixtureAtom> atoms;
    Rat total(0);
    for (size_t r = 0; r < tuples_.size(); ++r)
      if (duals_[r] > kZero) total += duals_[r];
    if (total == kZero) {
      atoms.push_back({Rat(1), tuples_[0]});
      return atoms;
    }
    for (size_t r = 0; r < tuples_.size(); ++r)
      if (duals_[r] > kZero)
        atoms.push_back({Rat(duals_[r] / total), tuples_[r]});
    return atoms;
  }

  AggregationRule lex_min_rule() {
    const int n = ms_.n;
    for (;;) {
      std::vector<std::optional<Rat>> pins(n + 1);
      for (int k = 0; k <= n; ++k) {
        lp::Solution sol = face_solve(k, false, pins);
        pins[k] = sol.objective;
      }
      AggregationRule rule;
      rule.n = n;
      for (int k = 0; k <= n; ++k) rule.values.push_back(*pins[k]);
      if (certify(rule)) return rule;
    }
  }

  FaceRange face_range(int k) {
    std::vector<std::optional<Rat>> no_pins(ms_.n + 1);
    FaceRange out;
    for (;;) {
      lp::Solution sol = face_solve(k, false, no_pins);
      if (certify(rule_from(sol, 0))) {
        out.lo = sol.objective;
        break;
      }
    }
    for (;;) {
      lp::Solution sol = face_solve(k, true, no_pins);
      if (certify(rule_from(sol, 0))) {
        out.hi = sol.objective;
        break;
      }
    }
    return out;
  }

 private:
  void seed() { add_tuple(std::vector<int>(ms_.num_states(), 0)); }

  void add_tuple(std::vector<int> t) {
    if (!tuple_set_.insert(t).second)
      fail(Errc::internal, "duplicate tuple generated");
    tuples_.push_back(std::move(t));
  }

  // t + sum_k f_k * sum_w mu_w u_w v_w(k) >= bayes(tuple).
  void tuple_row(const std::vector<int>& tuple, std::vector<Rat>* coeffs,
                 Rat* rhs, bool with_t) const {
    const int n = ms_.n;
    const int off = with_t ? 1 : 0;
    coeffs->assign(n + 1 + off, Rat(0));
    std::vector<Rat> acc(n + 1, Rat(0));
    for (int w = 0; w < ms_.num_states(); ++w) {
      const MeanVertex& v = verts_[w][tuple[w]];
      Rat scale = ms_.mu[w] * ms_.u[w];
      (*coeffs)[off + v.i] += scale * v.wi;
      acc[v.i] += scale * v.wi;
      if (v.j != v.i) {
        (*coeffs)[off + v.j] += scale * v.wj;
        acc[v.j] += scale * v.wj;
      }
    }
    if (with_t) (*coeffs)[0] = 1;
    Rat bayes(0);
    for (const Rat& m : acc)
      if (m > kZero) bayes += m;
    *rhs = bayes;
  }

  Rat regret_cap() const {
    Rat cap(0);
    for (int w = 0; w < ms_.num_states(); ++w)
      cap += ms_.mu[w] * (ms_.u[w] > kZero ? ms_.u[w] : Rat(-ms_.u[w]));
    return cap;
  }

  void solve_master() {
    const int n = ms_.n;
    for (;;) {
      lp::Program prog;
      prog.sense = lp::Sense::minimize;
      prog.add_var(Rat(0), regret_cap(), Rat(1));  // t
      for (int k = 0; k <= n; ++k) prog.add_var(Rat(0), Rat(1));
      for (const auto& t : tuples_) {
        std::vector<Rat> coeffs;
        Rat rhs;
        tuple_row(t, &coeffs, &rhs, true);
        prog.add_row(std::move(coeffs), lp::Rel::ge, std::move(rhs));
      }
      lp::Solution sol = lp::solve(prog);
      if (sol.status != lp::Status::optimal)
        fail(Errc::internal, "restricted multi-state game failed to solve");
      AggregationRule rule = rule_from(sol, 1);
      value_ = sol.objective;
      auto br = multistate_best_response(rule, ms_, verts_);
      if (br.value <= value_) {
        duals_ = sol.dual;
        return;
      }
      add_tuple(br.tuple);
    }
  }

  AggregationRule rule_from(const lp::Solution& sol, int offset) const {
    AggregationRule rule;
    rule.n = ms_.n;
    rule.values.assign(sol.primal.begin() + offset, sol.primal.end());
    return rule;
  }

  lp::Solution face_solve(int k, bool maximize,
                          const std::vector<std::optional<Rat>>& pins) {
    const int n = ms_.n;
    lp::Program prog;
    prog.sense = maximize ? lp::Sense::maximize : lp::Sense::minimize;
    for (int i = 0; i <= n; ++i) {
      Rat lo = pins[i] ? *pins[i] : Rat(0);
      Rat hi = pins[i] ? *pins[i] : Rat(1);
      prog.add_var(lo, hi, i == k ? Rat(1) : Rat(0));
    }
    for (const auto& t : tuples_) {
      std::vector<Rat> coeffs;
      Rat rhs;
      tuple_row(t, &coeffs, &rhs, false);
      prog.add_row(std::move(coeffs), lp::Rel::ge, rhs - value_);
    }
    lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal)
      fail(Errc::internal, "face probe failed to solve");
    return sol;
  }

  bool certify(const AggregationRule& rule) {
    auto br = multistate_best_response(rule, ms_, verts_);
    if (br.value <= value_) return true;
    add_tuple(br.tuple);
    return false;
  }

  const MultiScenario& ms_;
  std::vector<std::vector<MeanVertex>> verts_;
  std::vector<std::vector<int>> tuples_;
  std::set<std::vector<int>> tuple_set_;
  Rat value_;
  std::vector<Rat> duals_;
};

}  // namespace

MultiOptimalResult optimal_regret_rule_multistate(const MultiScenario& ms) {
  MultiMaster master(ms);
  MultiOptimalResult out;
  out.regret = master.value();
  out.rule = master.lex_min_rule();
  out.mixture = master.mixture();
  out.constraints_generated = master.constraints_generated();

  out.condition = true;
  for (int w = 0; w < ms.num_states(); ++w)
    out.condition = out.condition && rat(1, ms.n) <= ms.a_high[w] &&
                    ms.a_high[w] <= rat(ms.n - 1, ms.n);
  Rat closed(0);
  for (int w = 0; w < ms.num_states(); ++w) {
    if (ms.in_omega_h[w]) closed += ms.mu[w] * ms.u[w];
    closed -= ms.mu[w] * ms.a_high[w] * ms.u[w];
  }
  out.closed_form = closed;
  out.matches_closed_form = (out.regret == out.closed_form);
  if (out.condition) {
    bool unique = true;
    out.ranges.reserve(ms.n + 1);
    for (int k = 0; k <= ms.n; ++k) {
      FaceRange r = master.face_range(k);
      unique = unique && r.degenerate();
      out.ranges.push_back(std::move(r));
    }
    out.unique = unique;
  }
  return out;
}

}  // namespace robagg
