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

#include "robagg/lp.hpp"

#include <atomic>
#include <sstream>

#include "robagg/error.hpp"

namespace robagg::lp {

namespace {

std::atomic<long> g_audited{0};

const Rat kZero(0);

// Internal standard form: minimize c.x subject to A x = b, x >= 0, b >= 0.
// Original variables are shifted/mirrored/split to nonnegative columns;
// finite upper bounds become extra rows. Every row gets an artificial column
// so the initial basis is the identity and duals read off the artificial
// reduced costs.
struct Standard {
  int m = 0;          // rows
  int ncols = 0;      // structural + slack/surplus columns (no artificials)
  int total = 0;      // ncols + m artificials
  std::vector<std::vector<Rat>> a;  // m x total, initial data (kept for audit)
  std::vector<Rat> b;               // m, nonnegative
  std::vector<Rat> cost;            // total, phase-2 costs (0 on artificials)

  // Original variable j maps to column pos[j] (and neg[j] when split).
  // x_orig = shift + sign * x[pos] (- x[neg] when split).
  std::vector<int> pos, neg;
  std::vector<Rat> shift;
  std::vector<int> sign;

  std::vector<int> row_sign;  // +-1 multiplier applied to original row i
  int num_orig_rows = 0;      // rows 0..num_orig_rows-1 follow lp.rows order
};

Standard to_standard(const Program& lp) {
  const int nv = lp.num_vars();
  for (const auto& row : lp.rows)
    if (row.coeffs.size() != static_cast<size_t>(nv))
      fail(Errc::malformed_program, "row width disagrees with variable count");

  Standard s;
  s.pos.assign(nv, -1);
  s.neg.assign(nv, -1);
  s.shift.assign(nv, Rat(0));
  s.sign.assign(nv, 1);

  int col = 0;
  struct UpperRow {
    int col;
    Rat rhs;
  };
  std::vector<UpperRow> upper_rows;
  for (int j = 0; j < nv; ++j) {
    const auto& lo = lp.lower[j];
    const auto& hi = lp.upper[j];
    if (lo && hi && *hi < *lo)
      fail(Errc::malformed_program, "variable bounds cross");
    if (lo) {
      s.pos[j] = col++;
      s.shift[j] = *lo;
      s.sign[j] = 1;
      if (hi) upper_rows.push_back({s.pos[j], *hi - *lo});
    } else if (hi) {
      s.pos[j] = col++;  // x = hi - x'
      s.shift[j] = *hi;
      s.sign[j] = -1;
    } else {
      s.pos[j] = col++;
      s.neg[j] = col++;
      s.sign[j] = 1;
    }
  }
  const int nstruct = col;

  const int n_orig = static_cast<int>(lp.rows.size());
  s.num_orig_rows = n_orig;
  s.m = n_orig + static_cast<int>(upper_rows.size());
  s.row_sign.assign(s.m, 1);

  // Count slack/surplus columns.
  int nslack = static_cast<int>(upper_rows.size());
  for (const auto& row : lp.rows)
    if (row.rel != Rel::eq) ++nslack;

  s.ncols = nstruct + nslack;
  s.total = s.ncols + s.m;
  s.a.assign(s.m, std::vector<Rat>(s.total, Rat(0)));
  s.b.assign(s.m, Rat(0));
  s.cost.assign(s.total, Rat(0));

  // Objective in internal columns (constant offset from shifts is handled at
  // reconstruction time).
  const bool maximize = lp.sense == Sense::maximize;
  for (int j = 0; j < nv; ++j) {
    Rat c = lp.objective[j];
    if (maximize) c = -c;
    s.cost[s.pos[j]] += c * s.sign[j];
    if (s.neg[j] >= 0) s.cost[s.neg[j]] -= c;
  }

  int slack = nstruct;
  for (int i = 0; i < n_orig; ++i) {
    const auto& row = lp.rows[i];
    Rat rhs = row.rhs;
    for (int j = 0; j < nv; ++j) {
      const Rat& c = row.coeffs[j];
      if (c == kZero) continue;
      s.a[i][s.pos[j]] += c * s.sign[j];
      if (s.neg[j] >= 0) s.a[i][s.neg[j]] -= c;
      rhs -= c * s.shift[j];
    }
    Rat slack_coeff(0);
    if (row.rel == Rel::le) slack_coeff = 1;
    if (row.rel == Rel::ge) slack_coeff = -1;
    if (row.rel != Rel::eq) s.a[i][slack] = slack_coeff;
    if (rhs < kZero) {
      s.row_sign[i] = -1;
      for (int j = 0; j < s.ncols; ++j)
        if (s.a[i][j] != kZero) s.a[i][j] = -s.a[i][j];
      rhs = -rhs;
    }
    s.b[i] = rhs;
    if (row.rel != Rel::eq) ++slack;
  }
  for (size_t k = 0; k < upper_rows.size(); ++k) {
    int i = n_orig + static_cast<int>(k);
    s.a[i][upper_rows[k].col] = 1;
    s.a[i][slack] = 1;
    s.b[i] = upper_rows[k].rhs;  // >= 0 (bounds checked above)
    ++slack;
  }
  // Artificials: identity block.
  for (int i = 0; i < s.m; ++i) s.a[i][s.ncols + i] = 1;
  return s;
}

class Simplex {
 public:
  explicit Simplex(const Standard& s)
      : s_(s), tab_(s.a), rhs_(s.b), basis_(s.m) {
    for (int i = 0; i < s_.m; ++i) basis_[i] = s_.ncols + i;
  }

  // Returns false when phase 1 ends with positive infeasibility.
  bool phase1() {
    std::vector<Rat> c(s_.total, Rat(0));
    for (int i = 0; i < s_.m; ++i) c[s_.ncols + i] = 1;
    price(c);
    run();
    if (value_ != kZero) return false;
    drive_out_artificials();
    return true;
  }

  void phase2() {
    price(s_.cost);
    run();
  }

  bool unbounded() const { return unbounded_; }
  const Rat& value() const { return value_; }

  std::vector<Rat> primal_columns() const {
    std::vector<Rat> x(s_.total, Rat(0));
    for (int i = 0; i < s_.m; ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

  // y_i = c_art(=0) - rc[artificial_i] once phase 2 is priced.
  std::vector<Rat> duals() const {
    std::vector<Rat> y(s_.m);
    for (int i = 0; i < s_.m; ++i) y[i] = -obj_[s_.ncols + i];
    return y;
  }

  const std::vector<Rat>& reduced_costs() const { return obj_; }

 private:
  bool is_artificial(int j) const { return j >= s_.ncols; }

  // Rebuilds the reduced-cost row for cost vector c at the current basis.
  void price(const std::vector<Rat>& c) {
    obj_ = c;
    value_ = 0;
    for (int i = 0; i < s_.m; ++i) {
      const Rat& cb = c[basis_[i]];
      if (cb == kZero) continue;
      value_ += cb * rhs_[i];
      for (int j = 0; j < s_.total; ++j)
        if (tab_[i][j] != kZero) obj_[j] -= cb * tab_[i][j];
    }
    value_ = -value_;  // store as negated objective like the textbook z-row
  }

  void run() {
    unbounded_ = false;
    for (;;) {
      // Bland: entering = smallest-index column with negative reduced cost.
      // Artificial columns never enter; once one leaves the basis it stays
      // at zero, which preserves phase-1 completeness (any feasible point
      // has all artificials at zero anyway).
      int enter = -1;
      for (int j = 0; j < s_.ncols; ++j) {
        if (obj_[j] < kZero) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rat best_ratio;
      for (int i = 0; i < s_.m; ++i) {
        if (tab_[i][enter] <= kZero) continue;
        Rat ratio = rhs_[i] / tab_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        unbounded_ = true;
        return;
      }
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    Rat p = tab_[row][col];
    if (p == kZero) fail(Errc::internal, "pivot on zero element");
    std::vector<Rat>& prow = tab_[row];
    if (p != 1) {
      for (int j = 0; j < s_.total; ++j)
        if (prow[j] != kZero) prow[j] /= p;
      rhs_[row] /= p;
    }
    for (int i = 0; i < s_.m; ++i) {
      if (i == row) continue;
      const Rat f = tab_[i][col];
      if (f == kZero) continue;
      std::vector<Rat>& r = tab_[i];
      for (int j = 0; j < s_.total; ++j)
        if (prow[j] != kZero) r[j] -= f * prow[j];
      rhs_[i] -= f * rhs_[row];
    }
    const Rat f = obj_[col];
    if (f != kZero) {
      for (int j = 0; j < s_.total; ++j)
        if (prow[j] != kZero) obj_[j] -= f * prow[j];
      value_ -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  // Degenerate pivots that remove zero-valued artificials from the basis;
  // rows with no structural support keep their artificial pinned at zero.
  void drive_out_artificials() {
    for (int i = 0; i < s_.m; ++i) {
      if (!is_artificial(basis_[i])) continue;
      int col = -1;
      for (int j = 0; j < s_.ncols; ++j) {
        if (tab_[i][j] != kZero) {
          col = j;
          break;
        }
      }
      if (col >= 0) pivot(i, col);
    }
  }

  const Standard& s_;
  std::vector<std::vector<Rat>> tab_;
  std::vector<Rat> rhs_;
  std::vector<int> basis_;
  std::vector<Rat> obj_;
  Rat value_;
  bool unbounded_ = false;
};

// Exact post-solve audit on the internal standard form.
void audit_internal(const Standard& s, const std::vector<Rat>& x,
                    const std::vector<Rat>& y, const std::vector<Rat>& rc) {
  // Primal feasibility: A x = b over initial data, x >= 0 on real columns,
  // artificials at zero except on redundant rows (where they may sit at 0).
  for (int j = 0; j < s.total; ++j)
    if (x[j] < kZero) fail(Errc::internal, "lp audit: negative column value");
  for (int i = 0; i < s.m; ++i) {
    Rat lhs(0);
    for (int j = 0; j < s.total; ++j)
      if (s.a[i][j] != kZero && x[j] != kZero) lhs += s.a[i][j] * x[j];
    if (lhs != s.b[i]) fail(Errc::internal, "lp audit: primal row violated");
  }
  // Dual feasibility and complementary slackness on real columns.
  Rat cx(0), yb(0);
  for (int j = 0; j < s.ncols; ++j) {
    Rat red = s.cost[j];
    for (int i = 0; i < s.m; ++i)
      if (s.a[i][j] != kZero) red -= y[i] * s.a[i][j];
    if (red != rc[j]) fail(Errc::internal, "lp audit: stale reduced cost");
    if (red < kZero) fail(Errc::internal, "lp audit: dual infeasible");
    if (x[j] != kZero && red != kZero)
      fail(Errc::internal, "lp audit: complementary slackness violated");
    if (x[j] != kZero) cx += s.cost[j] * x[j];
  }
  for (int i = 0; i < s.m; ++i) yb += y[i] * s.b[i];
  if (cx != yb) fail(Errc::internal, "lp audit: strong duality violated");
  g_audited.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

int Program::add_var(std::optional<Rat> lo, std::optional<Rat> hi, Rat obj) {
  objective.push_back(std::move(obj));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  for (auto& row : rows) row.coeffs.emplace_back(0);
  return num_vars() - 1;
}

void Program::add_row(std::vector<Rat> coeffs, Rel rel, Rat rhs) {
  if (coeffs.size() != static_cast<size_t>(num_vars()))
    fail(Errc::malformed_program, "row width disagrees with variable count");
  rows.push_back({std::move(coeffs), rel, std::move(rhs)});
}

Solution solve(const Program& lp) {
  if (lp.num_vars() == 0) fail(Errc::malformed_program, "program has no variables");
  Standard s = to_standard(lp);
  Simplex simplex(s);

  Solution out;
  if (!simplex.phase1()) {
    out.status = Status::infeasible;
    return out;
  }
  simplex.phase2();
  if (simplex.unbounded()) {
    out.status = Status::unbounded;
    return out;
  }

  std::vector<Rat> xcols = simplex.primal_columns();
  std::vector<Rat> y = simplex.duals();
  audit_internal(s, xcols, y, simplex.reduced_costs());

  out.status = Status::optimal;
  const int nv = lp.num_vars();
  out.primal.resize(nv);
  for (int j = 0; j < nv; ++j) {
    Rat v = s.shift[j] + Rat(s.sign[j]) * xcols[s.pos[j]];
    if (s.neg[j] >= 0) v -= xcols[s.neg[j]];
    out.primal[j] = v;
  }
  Rat obj(0);
  for (int j = 0; j < nv; ++j)
    if (lp.objective[j] != kZero && out.primal[j] != kZero)
      obj += lp.objective[j] * out.primal[j];
  out.objective = obj;

  const bool maximize = lp.sense == Sense::maximize;
  out.dual.resize(lp.rows.size());
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    Rat d = Rat(s.row_sign[i]) * y[i];
    out.dual[i] = maximize ? Rat(-d) : d;
  }
  if (!recheck_primal(lp, out))
    fail(Errc::internal, "lp audit: reconstructed primal infeasible");
  return out;
}

Range range_at_optimum(const Program& lp, const Solution& sol, int var) {
  if (sol.status != Status::optimal)
    fail(Errc::invalid_argument, "range probe requires an optimal solution");
  if (var < 0 || var >= lp.num_vars())
    fail(Errc::invalid_argument, "variable index out of range");
  Program pinned = lp;
  pinned.add_row(lp.objective, Rel::eq, sol.objective);
  std::fill(pinned.objective.begin(), pinned.objective.end(), Rat(0));
  pinned.objective[var] = 1;

  Range r;
  pinned.sense = Sense::minimize;
  Solution lo = solve(pinned);
  if (lo.status == Status::infeasible)
    fail(Errc::internal, "optimal face empty in range probe");
  if (lo.status == Status::optimal) r.lo = lo.objective;
  pinned.sense = Sense::maximize;
  Solution hi = solve(pinned);
  if (hi.status == Status::optimal) r.hi = hi.objective;
  return r;
}

bool recheck_primal(const Program& lp, const Solution& sol) {
  if (sol.status != Status::optimal) return false;
  const int nv = lp.num_vars();
  if (sol.primal.size() != static_cast<size_t>(nv)) return false;
  for (int j = 0; j < nv; ++j) {
    if (lp.lower[j] && sol.primal[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && sol.primal[j] > *lp.upper[j]) return false;
  }
  for (const auto& row : lp.rows) {
    Rat lhs(0);
    for (int j = 0; j < nv; ++j)
      if (row.coeffs[j] != kZero && sol.primal[j] != kZero)
        lhs += row.coeffs[j] * sol.primal[j];
    if (row.rel == Rel::le && lhs > row.rhs) return false;
    if (row.rel == Rel::ge && lhs < row.rhs) return false;
    if (row.rel == Rel::eq && lhs != row.rhs) return false;
  }
  Rat obj(0);
  for (int j = 0; j < nv; ++j)
    if (lp.objective[j] != kZero && sol.primal[j] != kZero)
      obj += lp.objective[j] * sol.primal[j];
  return obj == sol.objective;
}

long audited_solves() { return g_audited.load(std::memory_order_relaxed); }

std::string dump(const Program& lp) {
  std::ostringstream os;
  os << (lp.sense == Sense::maximize ? "Maximize" : "Minimize") << "\n obj:";
  for (int j = 0; j < lp.num_vars(); ++j)
    if (lp.objective[j] != kZero)
      os << " + " << rat_str(lp.objective[j]) << " x" << j;
  os << "\nSubject To\n";
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    os << " c" << i << ":";
    for (int j = 0; j < lp.num_vars(); ++j)
      if (lp.rows[i].coeffs[j] != kZero)
        os << " + " << rat_str(lp.rows[i].coeffs[j]) << " x" << j;
    switch (lp.rows[i].rel) {
      case Rel::le: os << " <= "; break;
      case Rel::eq: os << " = "; break;
      case Rel::ge: os << " >= "; break;
    }
    os << rat_str(lp.rows[i].rhs) << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    os << " " << (lp.lower[j] ? rat_str(*lp.lower[j]) : std::string("-inf"))
       << " <= x" << j << " <= "
       << (lp.upper[j] ? rat_str(*lp.upper[j]) : std::string("+inf")) << "\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace robagg::lp
