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

#ifndef ROBAGG_LP_HPP_
#define ROBAGG_LP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "robagg/rational.hpp"

namespace robagg::lp {

enum class Sense { minimize, maximize };
enum class Rel { le, eq, ge };

struct Constraint {
  std::vector<Rat> coeffs;  // dense, one per variable
  Rel rel = Rel::le;
  Rat rhs;
};

// Dense rational program. Variables carry optional bounds (nullopt = that
// side unbounded). Everything is exact; no floating point anywhere.
struct Program {
  Sense sense = Sense::minimize;
  std::vector<Rat> objective;
  std::vector<std::optional<Rat>> lower;
  std::vector<std::optional<Rat>> upper;
  std::vector<Constraint> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }

  // Appends a variable with bounds and objective coefficient; returns index.
  int add_var(std::optional<Rat> lo, std::optional<Rat> hi, Rat obj = Rat(0));
  void add_row(std::vector<Rat> coeffs, Rel rel, Rat rhs);
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rat objective;
  std::vector<Rat> primal;  // per variable
  std::vector<Rat> dual;    // per constraint row; for a maximization, the
                            // dual of a binding <= row is nonnegative
};

// Two-phase dense simplex with Bland's rule. Every optimal solve is audited
// in place: exact primal feasibility, dual feasibility, complementary
// slackness, and strong duality, with Errc::internal thrown on any failure.
Solution solve(const Program& lp);

struct Range {
  std::optional<Rat> lo;  // nullopt = unbounded below on the optimal face
  std::optional<Rat> hi;
};

// Min and max of variable `var` over the optimal face, obtained by pinning
// the objective to its optimal value as an equality row and re-solving.
Range range_at_optimum(const Program& lp, const Solution& sol, int var);

// Re-checks a solution against the program: primal feasibility of every row
// and bound, and the objective value. Returns false on any exact violation.
bool recheck_primal(const Program& lp, const Solution& sol);

// Number of optimal solves that passed the built-in exact audit since
// process start (monotone counter, for test reporting).
long audited_solves();

// CPLEX-LP-style textual dump for external cross-checking.
std::string dump(const Program& lp);

}  // namespace robagg::lp

#endif  // ROBAGG_LP_HPP_
