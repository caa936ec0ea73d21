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

#include "robagg/evaluate.hpp"

#include <algorithm>
#include <numeric>

#include "robagg/error.hpp"
#include "robagg/hull.hpp"

namespace robagg {

namespace {

const Rat kZero(0);
const Rat kOne(1);

void require_same_n(int lhs, int rhs) {
  if (lhs != rhs) fail(Errc::size_mismatch, "grid sizes differ");
}

Rat expectation(const std::vector<Rat>& dist, const std::vector<Rat>& values) {
  Rat e(0);
  for (size_t k = 0; k < dist.size(); ++k)
    if (dist[k] != kZero && values[k] != kZero) e += dist[k] * values[k];
  return e;
}

}  // namespace

Rat dm_success(const AggregationRule& rule, const ReducedStructure& rs,
               const Rat& mu) {
  require_same_n(rule.n, rs.n);
  Rat e1 = expectation(rs.dist1, rule.values);
  Rat e0 = expectation(rs.dist0, rule.values);
  return mu * e1 + (kOne - mu) * (kOne - e0);
}

Rat bayes_success(const ReducedStructure& rs, const Rat& mu) {
  Rat total(0);
  for (int k = 0; k <= rs.n; ++k) {
    Rat w0 = (kOne - mu) * rs.dist0[k];
    Rat w1 = mu * rs.dist1[k];
    total += std::max(w0, w1);
  }
  return total;
}

Rat regret_at(const AggregationRule& rule, const ReducedStructure& rs,
              const Rat& mu) {
  require_same_n(rule.n, rs.n);
  return bayes_success(rs, mu) - dm_success(rule, rs, mu);
}

AggregationRule bayes_responder(const ReducedStructure& rs, const Rat& mu) {
  AggregationRule rule;
  rule.n = rs.n;
  rule.values.reserve(rs.n + 1);
  for (int k = 0; k <= rs.n; ++k)
    rule.values.push_back(mu * rs.dist1[k] >= (kOne - mu) * rs.dist0[k]
                              ? Rat(1)
                              : Rat(0));
  return rule;
}

// For a vertex pair (v0, v1):
//   P(f)  = 1 - S0 - S1 with S0 = (1-mu) E_{v0}[f], S1 = mu (1 - E_{v1}[f])
//   P*    = 1 - pen with pen = sum over shared support of min masses
//   Reg   = S0 + S1 - pen <= S0 + S1, tight iff the supports are disjoint.
struct AdversaryVertices::Scores {
  std::vector<Rat> s0, s1;
  std::vector<int> ord0, ord1;  // indices sorted by score, descending
};

AdversaryVertices::AdversaryVertices(const Scenario& s) : s_(s) {
  v0_ = enumerate_mean_vertex_supports(s.n, s.a);
  v1_ = enumerate_mean_vertex_supports(s.n, s.b);
}

AdversaryVertices::Scores AdversaryVertices::scores(
    const AggregationRule& rule) const {
  validate_rule(rule);
  require_same_n(rule.n, s_.n);
  Scores sc;
  const Rat mu0 = kOne - s_.mu;
  sc.s0.reserve(v0_.size());
  for (const MeanVertex& v : v0_) {
    Rat e = v.wi * rule.values[v.i];
    if (v.j != v.i) e += v.wj * rule.values[v.j];
    sc.s0.push_back(mu0 * e);
  }
  sc.s1.reserve(v1_.size());
  for (const MeanVertex& v : v1_) {
    Rat e = v.wi * rule.values[v.i];
    if (v.j != v.i) e += v.wj * rule.values[v.j];
    sc.s1.push_back(s_.mu * (kOne - e));
  }
  sc.ord0.resize(v0_.size());
  sc.ord1.resize(v1_.size());
  std::iota(sc.ord0.begin(), sc.ord0.end(), 0);
  std::iota(sc.ord1.begin(), sc.ord1.end(), 0);
  std::stable_sort(sc.ord0.begin(), sc.ord0.end(),
                   [&](int a, int b) { return sc.s0[a] > sc.s0[b]; });
  std::stable_sort(sc.ord1.begin(), sc.ord1.end(),
                   [&](int a, int b) { return sc.s1[a] > sc.s1[b]; });
  return sc;
}

Rat AdversaryVertices::penalty(int i0, int i1) const {
  const MeanVertex& a = v0_[i0];
  const MeanVertex& b = v1_[i1];
  const Rat mu0 = kOne - s_.mu;
  Rat pen(0);
  auto accumulate = [&](int ga, const Rat& wa, int gb, const Rat& wb) {
    if (ga == gb) pen += std::min(Rat(mu0 * wa), Rat(s_.mu * wb));
  };
  accumulate(a.i, a.wi, b.i, b.wi);
  if (b.j != b.i) accumulate(a.i, a.wi, b.j, b.wj);
  if (a.j != a.i) {
    accumulate(a.j, a.wj, b.i, b.wi);
    if (b.j != b.i) accumulate(a.j, a.wj, b.j, b.wj);
  }
  return pen;
}

AdversaryVertices::BestResponse AdversaryVertices::best_response(
    const AggregationRule& rule) const {
  Scores sc = scores(rule);
  Rat best;
  bool have = false;
  const Rat& s1max = sc.s1[sc.ord1.front()];
  for (int i0 : sc.ord0) {
    if (have && sc.s0[i0] + s1max <= best) break;
    for (int i1 : sc.ord1) {
      Rat ub = sc.s0[i0] + sc.s1[i1];
      if (have && ub <= best) break;
      Rat val = ub - penalty(i0, i1);
      if (!have || val > best) {
        best = val;
        have = true;
      }
    }
  }
  // Canonical retrieval: first pair in v0-major order attaining the max.
  for (size_t i0 = 0; i0 < v0_.size(); ++i0) {
    if (sc.s0[i0] + s1max < best) continue;
    for (size_t i1 = 0; i1 < v1_.size(); ++i1) {
      Rat ub = sc.s0[i0] + sc.s1[i1];
      if (ub < best) continue;
      if (ub - penalty(static_cast<int>(i0), static_cast<int>(i1)) == best)
        return {best, static_cast<int>(i0), static_cast<int>(i1)};
    }
  }
  fail(Errc::internal, "best response retrieval missed its own maximum");
}

Rat AdversaryVertices::min_dm_success(const AggregationRule& rule) const {
  Scores sc = scores(rule);
  return kOne - sc.s0[sc.ord0.front()] - sc.s1[sc.ord1.front()];
}

bool AdversaryVertices::ratio_violated(const AggregationRule& rule,
                                       const Rat& lambda) const {
  Scores sc = scores(rule);
  const Rat shift = lambda - kOne;
  const Rat& s1max = sc.s1[sc.ord1.front()];
  for (int i0 : sc.ord0) {
    if (shift + sc.s0[i0] + s1max <= kZero) break;
    for (int i1 : sc.ord1) {
      Rat ub = shift + sc.s0[i0] + sc.s1[i1];
      if (ub <= kZero) break;
      if (ub - lambda * penalty(i0, i1) > kZero) return true;
    }
  }
  return false;
}

Rat AdversaryVertices::regret_at_pair(const AggregationRule& rule, int v0,
                                      int v1) const {
  ReducedStructure rs = pair(v0, v1);
  return regret_at(rule, rs, s_.mu);
}

ReducedStructure AdversaryVertices::pair(int v0, int v1) const {
  return reduced_from_vertices(s_.n, v0_[v0], v1_[v1]);
}

std::pair<Rat, ReducedStructure> worst_case_regret(const AggregationRule& rule,
                                                   const Scenario& s) {
  AdversaryVertices verts(s);
  auto br = verts.best_response(rule);
  return {br.value, verts.pair(br.v0, br.v1)};
}

Rat minimax_value(const AggregationRule& rule, const Scenario& s) {
  return AdversaryVertices(s).min_dm_success(rule);
}

Rat regret_bound_cavvex(const AggregationRule& rule, const Scenario& s) {
  require_same_n(rule.n, s.n);
  Rat cav_a = concavify(rule).eval(s.a);
  Rat vex_b = convexify(rule).eval(s.b);
  return kOne - (kOne - s.mu) * (kOne - cav_a) - s.mu * vex_b;
}

CavVexSupport regret_bound_support(const AggregationRule& rule,
                                   const Scenario& s) {
  require_same_n(rule.n, s.n);
  CavVexSupport out;
  out.cav_at_a = hull_support(concavify(rule), s.n, s.a);
  out.vex_at_b = hull_support(convexify(rule), s.n, s.b);
  auto in_cav = [&](int g) {
    return g == out.cav_at_a.first || g == out.cav_at_a.second;
  };
  out.disjoint = !in_cav(out.vex_at_b.first) && !in_cav(out.vex_at_b.second);
  return out;
}

Rat approx_ratio(const AggregationRule& rule, const Scenario& s,
                 const Rat& tol) {
  if (tol <= kZero) fail(Errc::invalid_argument, "tolerance must be positive");
  AdversaryVertices verts(s);
  if (!verts.ratio_violated(rule, kOne)) return kOne;
  Rat lo(0), hi(1);
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    if (verts.ratio_violated(rule, mid))
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

Rat multistate_dm_utility(const AggregationRule& rule,
                          const std::vector<std::vector<Rat>>& dists,
                          const MultiScenario& ms) {
  if (dists.size() != static_cast<size_t>(ms.num_states()))
    fail(Errc::size_mismatch, "one distribution per state required");
  require_same_n(rule.n, ms.n);
  Rat total(0);
  for (int w = 0; w < ms.num_states(); ++w) {
    if (dists[w].size() != static_cast<size_t>(ms.n + 1))
      fail(Errc::size_mismatch, "distribution grid differs from n");
    if (ms.u[w] == kZero) continue;
    total += ms.mu[w] * ms.u[w] * expectation(dists[w], rule.values);
  }
  return total;
}

Rat multistate_bayes_utility(const std::vector<std::vector<Rat>>& dists,
                             const MultiScenario& ms) {
  if (dists.size() != static_cast<size_t>(ms.num_states()))
    fail(Errc::size_mismatch, "one distribution per state required");
  Rat total(0);
  for (int k = 0; k <= ms.n; ++k) {
    Rat signed_mass(0);
    for (int w = 0; w < ms.num_states(); ++w) {
      if (dists[w].size() != static_cast<size_t>(ms.n + 1))
        fail(Errc::size_mismatch, "distribution grid differs from n");
      if (ms.u[w] != kZero && dists[w][k] != kZero)
        signed_mass += ms.mu[w] * ms.u[w] * dists[w][k];
    }
    if (signed_mass > kZero) total += signed_mass;
  }
  return total;
}

Rat multistate_tuple_regret(const AggregationRule& rule,
                            const MultiScenario& ms,
                            const std::vector<std::vector<MeanVertex>>& verts,
                            const std::vector<int>& tuple) {
  std::vector<Rat> acc(ms.n + 1, Rat(0));
  Rat dm(0);
  for (int w = 0; w < ms.num_states(); ++w) {
    const MeanVertex& v = verts[w][tuple[w]];
    Rat scale = ms.mu[w] * ms.u[w];
    acc[v.i] += scale * v.wi;
    Rat e = v.wi * rule.values[v.i];
    if (v.j != v.i) {
      acc[v.j] += scale * v.wj;
      e += v.wj * rule.values[v.j];
    }
    dm += scale * e;
  }
  Rat bayes(0);
  for (const Rat& m : acc)
    if (m > kZero) bayes += m;
  return bayes - dm;
}

MultiTupleBest multistate_best_response(
    const AggregationRule& rule, const MultiScenario& ms,
    const std::vector<std::vector<MeanVertex>>& verts) {
  validate_rule(rule);
  require_same_n(rule.n, ms.n);
  const int ns = ms.num_states();

  // Per-state pieces: d[w][v] = mu_w u_w E_v[f]; the bayes part can gain at
  // most mu_w max(u_w, 0) from a not-yet-fixed state.
  std::vector<std::vector<Rat>> d(ns);
  std::vector<Rat> suffix_bound(ns + 1, Rat(0));
  for (int w = 0; w < ns; ++w) {
    d[w].reserve(verts[w].size());
    for (const MeanVertex& v : verts[w]) {
      Rat e = v.wi * rule.values[v.i];
      if (v.j != v.i) e += v.wj * rule.values[v.j];
      d[w].push_back(ms.mu[w] * ms.u[w] * e);
    }
  }
  for (int w = ns - 1; w >= 0; --w) {
    Rat dmin = d[w][0];
    for (const Rat& x : d[w]) dmin = std::min(dmin, x);
    Rat cap = ms.u[w] > kZero ? Rat(ms.mu[w] * ms.u[w]) : Rat(0);
    suffix_bound[w] = suffix_bound[w + 1] + cap - dmin;
  }

  MultiTupleBest best;
  bool have = false;
  std::vector<int> tuple(ns, 0);
  std::vector<Rat> acc(ms.n + 1, Rat(0));  // signed mass per grid point
  Rat bayes(0), dm(0);

  auto apply_point = [&](int g, const Rat& delta) {
    Rat before = acc[g] > kZero ? acc[g] : kZero;
    acc[g] += delta;
    Rat after = acc[g] > kZero ? acc[g] : kZero;
    bayes += after - before;
  };

  auto rec = [&](auto&& self, int w) -> void {
    if (w == ns) {
      Rat val = bayes - dm;
      if (!have || val > best.value) {
        best.value = val;
        best.tuple = tuple;
        have = true;
      }
      return;
    }
    if (have && bayes - dm + suffix_bound[w] <= best.value) return;
    const Rat scale = ms.mu[w] * ms.u[w];
    for (size_t v = 0; v < verts[w].size(); ++v) {
      const MeanVertex& mv = verts[w][v];
      tuple[w] = static_cast<int>(v);
      apply_point(mv.i, Rat(scale * mv.wi));
      if (mv.j != mv.i) apply_point(mv.j, Rat(scale * mv.wj));
      dm += d[w][v];
      self(self, w + 1);
      dm -= d[w][v];
      apply_point(mv.i, Rat(-(scale * mv.wi)));
      if (mv.j != mv.i) apply_point(mv.j, Rat(-(scale * mv.wj)));
    }
    tuple[w] = 0;
  };
  rec(rec, 0);
  if (!have) fail(Errc::internal, "empty tuple enumeration");
  return best;
}

MultistateWorstCase multistate_worst_case_regret(const AggregationRule& rule,
                                                 const MultiScenario& ms) {
  auto verts = multistate_vertex_supports(ms);
  MultiTupleBest best = multistate_best_response(rule, ms, verts);
  MultistateWorstCase out;
  out.value = best.value;
  out.tuple.reserve(ms.num_states());
  for (int w = 0; w < ms.num_states(); ++w)
    out.tuple.push_back(verts[w][best.tuple[w]].dense(ms.n));
  return out;
}

}  // namespace robagg
