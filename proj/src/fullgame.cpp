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

#include "robagg/fullgame.hpp"

#include <algorithm>

#include "robagg/error.hpp"
#include "robagg/evaluate.hpp"
#include "robagg/feasible.hpp"
#include "robagg/lp.hpp"

namespace robagg {

namespace {

const Rat kZero(0);
const Rat kOne(1);

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

// Variables of the C-polytope LP: x0_D at index D, x1_D at index 2^n + D.
lp::Program polytope_c_program(const Scenario& s) {
  const std::uint32_t nsets = 1u << s.n;
  lp::Program prog;
  prog.sense = lp::Sense::maximize;
  for (std::uint32_t j = 0; j < 2 * nsets; ++j)
    prog.add_var(Rat(0), std::nullopt);
  for (int state = 0; state < 2; ++state) {
    std::vector<Rat> row(2 * nsets, Rat(0));
    for (std::uint32_t d = 0; d < nsets; ++d) row[state * nsets + d] = 1;
    prog.add_row(std::move(row), lp::Rel::eq,
                 state == 0 ? Rat(kOne - s.mu) : s.mu);
  }
  for (int state = 0; state < 2; ++state) {
    Rat marginal = state == 0 ? Rat((kOne - s.mu) * s.a) : Rat(s.mu * s.b);
    for (int i = 0; i < s.n; ++i) {
      std::vector<Rat> row(2 * nsets, Rat(0));
      for (std::uint32_t d = 0; d < nsets; ++d)
        if (d & (1u << i)) row[state * nsets + d] = 1;
      prog.add_row(std::move(row), lp::Rel::eq, marginal);
    }
  }
  return prog;
}

FullStructure structure_from_primal(int n, const std::vector<Rat>& primal) {
  const std::uint32_t nsets = 1u << n;
  FullStructure fs;
  fs.n = n;
  for (std::uint32_t d = 0; d < nsets; ++d) {
    if (primal[d] != kZero) fs.mass0[d] = primal[d];
    if (primal[nsets + d] != kZero) fs.mass1[d] = primal[nsets + d];
  }
  return fs;
}

Rat pstar_count(const FullStructure& fs) {
  std::vector<Rat> c0(fs.n + 1, Rat(0)), c1(fs.n + 1, Rat(0));
  for (const auto& [set, w] : fs.mass0) c0[popcount(set)] += w;
  for (const auto& [set, w] : fs.mass1) c1[popcount(set)] += w;
  Rat total(0);
  for (int k = 0; k <= fs.n; ++k) total += std::max(c0[k], c1[k]);
  return total;
}

Rat pstar_set(const FullStructure& fs) {
  Rat total(0);
  auto it1 = fs.mass1.begin();
  for (const auto& [set, w0] : fs.mass0) {
    while (it1 != fs.mass1.end() && it1->first < set) {
      total += it1->second;
      ++it1;
    }
    if (it1 != fs.mass1.end() && it1->first == set) {
      total += std::max(w0, it1->second);
      ++it1;
    } else {
      total += w0;
    }
  }
  for (; it1 != fs.mass1.end(); ++it1) total += it1->second;
  return total;
}

Rat dm_success_count(const AggregationRule& rule, const FullStructure& fs) {
  Rat total(0);
  for (const auto& [set, w] : fs.mass0)
    total += (kOne - rule.values[popcount(set)]) * w;
  for (const auto& [set, w] : fs.mass1)
    total += rule.values[popcount(set)] * w;
  return total;
}

Rat dm_success_set(const SetRule& rule, const FullStructure& fs) {
  Rat total(0);
  for (const auto& [set, w] : fs.mass0)
    total += (kOne - rule.values[set]) * w;
  for (const auto& [set, w] : fs.mass1) total += rule.values[set] * w;
  return total;
}

void validate_set_rule(const SetRule& rule) {
  if (rule.n < 1) fail(Errc::invalid_argument, "set rule needs n >= 1");
  if (rule.values.size() != (1u << rule.n))
    fail(Errc::size_mismatch, "set rule needs 2^n values");
  for (const Rat& v : rule.values)
    if (v < kZero || v > kOne)
      fail(Errc::invalid_argument, "set rule value outside [0,1]");
}

}  // namespace

SetRule set_rule_from_count(const AggregationRule& rule) {
  validate_rule(rule);
  SetRule g;
  g.n = rule.n;
  g.values.resize(1u << rule.n);
  for (std::uint32_t d = 0; d < g.values.size(); ++d)
    g.values[d] = rule.values[popcount(d)];
  return g;
}

AggregationRule symmetrize(const SetRule& rule) {
  validate_set_rule(rule);
  AggregationRule f;
  f.n = rule.n;
  std::vector<Rat> sums(rule.n + 1, Rat(0));
  std::vector<long> counts(rule.n + 1, 0);
  for (std::uint32_t d = 0; d < rule.values.size(); ++d) {
    sums[popcount(d)] += rule.values[d];
    counts[popcount(d)] += 1;
  }
  for (int k = 0; k <= rule.n; ++k) f.values.push_back(sums[k] / counts[k]);
  return f;
}

FullBestResponse adversary_best_response_count(const AggregationRule& rule,
                                               const Scenario& s) {
  validate_rule(rule);
  if (rule.n != s.n) fail(Errc::size_mismatch, "rule grid differs from n");
  if (s.n > 10) fail(Errc::size_cap, "count-mode best response capped at n <= 10");

  const std::uint32_t nsets = 1u << s.n;
  lp::Program prog = polytope_c_program(s);
  FullBestResponse best;
  bool have = false;
  // One LP per sign pattern: bit k of the pattern picks which state attains
  // the count-k max. Each pattern objective under-estimates P* pointwise, so
  // re-scoring argmaxes by the true regret keeps exactness.
  for (std::uint32_t pattern = 0; pattern < (1u << (s.n + 1)); ++pattern) {
    for (std::uint32_t d = 0; d < nsets; ++d) {
      int k = popcount(d);
      bool high_side = (pattern >> k) & 1u;
      prog.objective[d] =
          (high_side ? Rat(0) : kOne) - (kOne - rule.values[k]);
      prog.objective[nsets + d] =
          (high_side ? kOne : Rat(0)) - rule.values[k];
    }
    lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal)
      fail(Errc::internal, "pattern LP over C failed");
    FullStructure fs = structure_from_primal(s.n, sol.primal);
    Rat value = pstar_count(fs) - dm_success_count(rule, fs);
    if (!have || value > best.value) {
      best.structure = std::move(fs);
      best.value = std::move(value);
      have = true;
    }
  }
  return best;
}

FullBestResponse adversary_best_response_set(const SetRule& rule,
                                             const Scenario& s) {
  validate_set_rule(rule);
  if (rule.n != s.n) fail(Errc::size_mismatch, "rule size differs from n");
  if (s.n > 3) fail(Errc::size_cap, "set-mode best response capped at n <= 3");

  const std::uint32_t nsets = 1u << s.n;
  lp::Program prog = polytope_c_program(s);
  FullBestResponse best;
  bool have = false;
  for (std::uint32_t pattern = 0; pattern < (1u << nsets); ++pattern) {
    for (std::uint32_t d = 0; d < nsets; ++d) {
      bool high_side = (pattern >> d) & 1u;
      prog.objective[d] =
          (high_side ? Rat(0) : kOne) - (kOne - rule.values[d]);
      prog.objective[nsets + d] = (high_side ? kOne : Rat(0)) - rule.values[d];
    }
    lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal)
      fail(Errc::internal, "pattern LP over C failed");
    FullStructure fs = structure_from_primal(s.n, sol.primal);
    Rat value = pstar_set(fs) - dm_success_set(rule, fs);
    if (!have || value > best.value) {
      best.structure = std::move(fs);
      best.value = std::move(value);
      have = true;
    }
  }
  return best;
}

DoubleOracleResult double_oracle(const Scenario& s, GameMode mode) {
  if (mode == GameMode::set && s.n > 3)
    fail(Errc::size_cap, "set-mode game capped at n <= 3");
  if (mode == GameMode::count && s.n > 10)
    fail(Errc::size_cap, "count-mode game capped at n <= 10");

  const std::uint32_t nsets = 1u << s.n;
  const int dm_vars = mode == GameMode::count ? s.n + 1
                                              : static_cast<int>(nsets);

  std::vector<FullStructure> structures;
  structures.push_back(symmetric_lift(fully_correlated(s), s));
  try {
    structures.push_back(symmetric_lift(supermajority_adversary(s, rat(1, 2)), s));
  } catch (const Error&) {
    // Not constructible for these parameters; the fully-correlated seed is
    // enough to start.
  }

  DoubleOracleResult out;
  out.mode = mode;
  for (;;) {
    lp::Program prog;
    prog.sense = lp::Sense::minimize;
    prog.add_var(Rat(0), Rat(1), Rat(1));  // t
    for (int j = 0; j < dm_vars; ++j) prog.add_var(Rat(0), Rat(1));
    for (const FullStructure& fs : structures) {
      std::vector<Rat> coeffs(1 + dm_vars, Rat(0));
      coeffs[0] = 1;
      Rat pstar;
      if (mode == GameMode::count) {
        for (const auto& [set, w] : fs.mass1) coeffs[1 + popcount(set)] += w;
        for (const auto& [set, w] : fs.mass0) coeffs[1 + popcount(set)] -= w;
        pstar = pstar_count(fs);
      } else {
        for (const auto& [set, w] : fs.mass1) coeffs[1 + set] += w;
        for (const auto& [set, w] : fs.mass0) coeffs[1 + set] -= w;
        pstar = pstar_set(fs);
      }
      prog.add_row(std::move(coeffs), lp::Rel::ge, pstar - (kOne - s.mu));
    }
    lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal)
      fail(Errc::internal, "restricted full game failed to solve");
    out.value = sol.objective;

    FullBestResponse br;
    if (mode == GameMode::count) {
      out.count_rule.n = s.n;
      out.count_rule.values.assign(sol.primal.begin() + 1, sol.primal.end());
      br = adversary_best_response_count(out.count_rule, s);
    } else {
      out.set_rule.n = s.n;
      out.set_rule.values.assign(sol.primal.begin() + 1, sol.primal.end());
      br = adversary_best_response_set(out.set_rule, s);
    }
    ++out.iterations;
    out.bounds_history.push_back({sol.objective, br.value});
    if (br.value <= out.value) {
      Rat total(0);
      for (size_t r = 0; r < structures.size(); ++r)
        if (sol.dual[r] > kZero) total += sol.dual[r];
      if (total == kZero) {
        out.mixture.push_back({Rat(1), structures.front()});
      } else {
        for (size_t r = 0; r < structures.size(); ++r)
          if (sol.dual[r] > kZero)
            out.mixture.push_back({Rat(sol.dual[r] / total), structures[r]});
      }
      return out;
    }
    structures.push_back(std::move(br.structure));
  }
}

AnonymityReport anonymity_equivalence(const Scenario& s) {
  if (s.n > 3) fail(Errc::size_cap, "anonymity check capped at n <= 3");
  AnonymityReport report;
  report.reduced_value = optimal_regret_rule(s).regret;
  DoubleOracleResult count = double_oracle(s, GameMode::count);
  DoubleOracleResult set = double_oracle(s, GameMode::set);
  report.count_value = count.value;
  report.set_value = set.value;
  report.equal = report.reduced_value == report.count_value &&
                 report.count_value == report.set_value;
  report.set_rule = set.set_rule;
  report.symmetrized = symmetrize(set.set_rule);
  FullBestResponse br =
      adversary_best_response_set(set_rule_from_count(report.symmetrized), s);
  report.symmetrized_optimal = (br.value == report.set_value);
  return report;
}

}  // namespace robagg
