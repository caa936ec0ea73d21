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

#include "robagg/feasible.hpp"

#include <algorithm>

#include "robagg/error.hpp"
#include "robagg/lp.hpp"

namespace robagg {

namespace {

const Rat kZero(0);
const Rat kOne(1);

constexpr int kFullStructureCap = 20;

Rat mean_of(const std::vector<Rat>& dist, int n) {
  Rat m(0);
  for (int k = 0; k <= n; ++k)
    if (dist[k] != kZero) m += dist[k] * rat(k, n);
  return m;
}

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

}  // namespace

std::vector<Rat> MeanVertex::dense(int n) const {
  std::vector<Rat> d(n + 1, Rat(0));
  d[i] += wi;
  if (j != i) d[j] += wj;
  return d;
}

bool check_feasible(const ReducedStructure& rs, const Scenario& s) {
  if (rs.n != s.n) fail(Errc::size_mismatch, "structure grid differs from n");
  validate_reduced(rs);
  return mean_of(rs.dist0, rs.n) == s.a && mean_of(rs.dist1, rs.n) == s.b;
}

std::vector<MeanVertex> enumerate_mean_vertex_supports(int n,
                                                       const Rat& mean) {
  if (mean < kZero || mean > kOne)
    fail(Errc::mean_out_of_range, "mean " + rat_str(mean) + " not in [0,1]");
  std::vector<MeanVertex> out;
  const Rat scaled = mean * n;  // integer iff mean is a grid point
  if (scaled.get_den() == 1) {
    int k = static_cast<int>(scaled.get_num().get_si());
    out.push_back({k, k, Rat(1), Rat(0)});
  }
  for (int i = 0; i < n; ++i) {
    if (rat(i, n) >= mean) break;
    for (int j = i + 1; j <= n; ++j) {
      if (rat(j, n) <= mean) continue;
      // Unique mixture of i/n and j/n with the requested mean.
      Rat wj = (scaled - i) / (j - i);
      out.push_back({i, j, kOne - wj, wj});
    }
  }
  return out;
}

std::vector<std::vector<Rat>> enumerate_mean_vertices(int n, const Rat& mean) {
  std::vector<std::vector<Rat>> out;
  for (const MeanVertex& v : enumerate_mean_vertex_supports(n, mean))
    out.push_back(v.dense(n));
  return out;
}

ReducedStructure reduced_from_vertices(int n, const MeanVertex& v0,
                                       const MeanVertex& v1) {
  ReducedStructure rs;
  rs.n = n;
  rs.dist0 = v0.dense(n);
  rs.dist1 = v1.dense(n);
  return rs;
}

std::vector<ReducedStructure> enumerate_adversary_vertices(const Scenario& s) {
  auto v0s = enumerate_mean_vertex_supports(s.n, s.a);
  auto v1s = enumerate_mean_vertex_supports(s.n, s.b);
  std::vector<ReducedStructure> out;
  out.reserve(v0s.size() * v1s.size());
  for (const auto& v0 : v0s)
    for (const auto& v1 : v1s) out.push_back(reduced_from_vertices(s.n, v0, v1));
  return out;
}

ReducedStructure fully_correlated(const Scenario& s) {
  ReducedStructure rs;
  rs.n = s.n;
  rs.dist0.assign(s.n + 1, Rat(0));
  rs.dist1.assign(s.n + 1, Rat(0));
  rs.dist0[0] = kOne - s.a;
  rs.dist0[s.n] = s.a;
  rs.dist1[0] = kOne - s.b;
  rs.dist1[s.n] = s.b;
  return rs;
}

ReducedStructure supermajority_adversary(const Scenario& s, const Rat& tau) {
  if (tau <= kZero || tau >= kOne)
    fail(Errc::invalid_argument, "threshold must lie in (0,1)");
  const int n = s.n;
  // nu0: smallest grid point >= tau; nu1: largest grid point < tau.
  int k0 = n;
  for (int k = 0; k <= n; ++k) {
    if (rat(k, n) >= tau) {
      k0 = k;
      break;
    }
  }
  int k1 = -1;
  for (int k = n; k >= 0; --k) {
    if (rat(k, n) < tau) {
      k1 = k;
      break;
    }
  }
  if (k1 < 0) fail(Errc::internal, "no grid point below threshold");
  Rat nu0 = rat(k0, n), nu1 = rat(k1, n);
  if (s.a > nu0)
    fail(Errc::infeasible_construction,
         "a = " + rat_str(s.a) + " exceeds nu0 = " + rat_str(nu0));
  if (s.b < nu1)
    fail(Errc::infeasible_construction,
         "b = " + rat_str(s.b) + " lies below nu1 = " + rat_str(nu1));

  ReducedStructure rs;
  rs.n = n;
  rs.dist0.assign(n + 1, Rat(0));
  rs.dist1.assign(n + 1, Rat(0));
  // dist0 on {0, nu0} with mean a; dist1 on {nu1, 1} with mean b.
  Rat w0 = s.a / nu0;
  rs.dist0[k0] += w0;
  rs.dist0[0] += kOne - w0;
  Rat w1 = (s.b - nu1) / (kOne - nu1);
  rs.dist1[n] += w1;
  rs.dist1[k1] += kOne - w1;

  for (int k = 0; k <= n; ++k)
    if (rs.dist0[k] != kZero && rs.dist1[k] != kZero)
      fail(Errc::internal, "supermajority supports overlap");  // unreachable
  return rs;
}

std::vector<std::vector<MeanVertex>> multistate_vertex_supports(
    const MultiScenario& ms) {
  std::vector<std::vector<MeanVertex>> per_state;
  per_state.reserve(ms.num_states());
  for (int w = 0; w < ms.num_states(); ++w)
    per_state.push_back(enumerate_mean_vertex_supports(ms.n, ms.a_high[w]));
  return per_state;
}

std::vector<std::vector<std::vector<Rat>>> multistate_vertices(
    const MultiScenario& ms) {
  auto per_state = multistate_vertex_supports(ms);
  std::vector<std::vector<std::vector<Rat>>> out;
  std::vector<int> idx(per_state.size(), 0);
  for (;;) {
    std::vector<std::vector<Rat>> tuple;
    tuple.reserve(per_state.size());
    for (size_t w = 0; w < per_state.size(); ++w)
      tuple.push_back(per_state[w][idx[w]].dense(ms.n));
    out.push_back(std::move(tuple));
    int w = static_cast<int>(per_state.size()) - 1;
    // Odometer increment, last state fastest.
    while (w >= 0 && ++idx[w] == static_cast<int>(per_state[w].size())) {
      idx[w] = 0;
      --w;
    }
    if (w < 0) break;
  }
  return out;
}

bool membership_c(const FullStructure& fs, const Scenario& s) {
  if (fs.n != s.n) fail(Errc::size_mismatch, "structure size differs from n");
  if (fs.n > kFullStructureCap)
    fail(Errc::size_cap, "full structures capped at n <= 20");
  const Rat m0_target = kOne - s.mu;
  const Rat m1_target = s.mu;
  for (int state = 0; state < 2; ++state) {
    const auto& mass = state == 0 ? fs.mass0 : fs.mass1;
    const Rat& total_target = state == 0 ? m0_target : m1_target;
    const Rat marginal_target =
        state == 0 ? Rat((kOne - s.mu) * s.a) : Rat(s.mu * s.b);
    Rat total(0);
    std::vector<Rat> agent(s.n, Rat(0));
    for (const auto& [set, w] : mass) {
      if (set >= (1u << s.n)) fail(Errc::size_mismatch, "subset out of range");
      if (w < kZero) return false;
      total += w;
      for (int i = 0; i < s.n; ++i)
        if (set & (1u << i)) agent[i] += w;
    }
    if (total != total_target) return false;
    for (int i = 0; i < s.n; ++i)
      if (agent[i] != marginal_target) return false;
  }
  return true;
}

ReducedStructure reduce(const FullStructure& fs) {
  ReducedStructure rs;
  rs.n = fs.n;
  rs.dist0.assign(fs.n + 1, Rat(0));
  rs.dist1.assign(fs.n + 1, Rat(0));
  Rat t0(0), t1(0);
  for (const auto& [set, w] : fs.mass0) {
    rs.dist0[popcount(set)] += w;
    t0 += w;
  }
  for (const auto& [set, w] : fs.mass1) {
    rs.dist1[popcount(set)] += w;
    t1 += w;
  }
  if (t0 == kZero || t1 == kZero)
    fail(Errc::empty_state, "a state carries zero total mass");
  for (int k = 0; k <= fs.n; ++k) {
    rs.dist0[k] /= t0;
    rs.dist1[k] /= t1;
  }
  return rs;
}

FullStructure symmetric_lift(const ReducedStructure& rs, const Scenario& s) {
  if (rs.n != s.n) fail(Errc::size_mismatch, "structure grid differs from n");
  if (rs.n > kFullStructureCap)
    fail(Errc::size_cap, "full structures capped at n <= 20");
  FullStructure fs;
  fs.n = rs.n;
  std::vector<Rat> binom(rs.n + 1);
  binom[0] = 1;
  for (int k = 1; k <= rs.n; ++k)
    binom[k] = binom[k - 1] * (rs.n - k + 1) / k;
  for (std::uint32_t set = 0; set < (1u << rs.n); ++set) {
    int k = popcount(set);
    if (rs.dist0[k] != kZero)
      fs.mass0[set] = (kOne - s.mu) * rs.dist0[k] / binom[k];
    if (rs.dist1[k] != kZero) fs.mass1[set] = s.mu * rs.dist1[k] / binom[k];
  }
  return fs;
}

FullStructure lift_to_full(const ReducedStructure& rs, const Scenario& s) {
  if (rs.n != s.n) fail(Errc::size_mismatch, "structure grid differs from n");
  if (rs.n > kFullStructureCap)
    fail(Errc::size_cap, "full structures capped at n <= 20");
  validate_reduced(rs);

  FullStructure fs;
  fs.n = rs.n;
  const int n = rs.n;
  const std::uint32_t nsets = 1u << n;
  for (int state = 0; state < 2; ++state) {
    const auto& dist = state == 0 ? rs.dist0 : rs.dist1;
    const Rat total = state == 0 ? Rat(kOne - s.mu) : s.mu;
    const Rat marginal =
        state == 0 ? Rat((kOne - s.mu) * s.a) : Rat(s.mu * s.b);

    lp::Program prog;
    for (std::uint32_t set = 0; set < nsets; ++set)
      prog.add_var(Rat(0), std::nullopt);
    // Count-level sums match the reduced distribution.
    for (int k = 0; k <= n; ++k) {
      std::vector<Rat> row(nsets, Rat(0));
      for (std::uint32_t set = 0; set < nsets; ++set)
        if (popcount(set) == k) row[set] = 1;
      prog.add_row(std::move(row), lp::Rel::eq, total * dist[k]);
    }
    // Per-agent inclusion marginals.
    for (int i = 0; i < n; ++i) {
      std::vector<Rat> row(nsets, Rat(0));
      for (std::uint32_t set = 0; set < nsets; ++set)
        if (set & (1u << i)) row[set] = 1;
      prog.add_row(std::move(row), lp::Rel::eq, marginal);
    }
    lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal)
      fail(Errc::lift_failure, "no joint mass assignment matches state " +
                                   std::to_string(state));
    auto& mass = state == 0 ? fs.mass0 : fs.mass1;
    for (std::uint32_t set = 0; set < nsets; ++set)
      if (sol.primal[set] != kZero) mass[set] = sol.primal[set];
  }
  return fs;
}

}  // namespace robagg
