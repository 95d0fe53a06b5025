// Copyright 2026 The dolab Authors
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

#include "dolab/lp.h"

#include <utility>

#include "dolab/errors.h"

namespace dolab {

LinearConstraint& LinearProgram::AddConstraint(Relation relation, Rational rhs) {
  LinearConstraint c;
  c.coeffs.assign(num_vars, Rational(0));
  c.relation = relation;
  c.rhs = std::move(rhs);
  constraints.push_back(std::move(c));
  return constraints.back();
}

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1)) {}

  Rational& at(int r, int c) { return cells_[r * (cols_ + 1) + c]; }
  Rational& rhs(int r) { return at(r, cols_); }
  // Row `rows_` holds the reduced costs z_j - c_j of the current phase.
  Rational& cost(int c) { return at(rows_, c); }
  Rational& objective() { return at(rows_, cols_); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void Pivot(int pr, int pc) {
    Rational inv = 1 / at(pr, pc);
    for (int c = 0; c <= cols_; ++c) {
      if (sgn(at(pr, c)) != 0) at(pr, c) *= inv;
    }
    Rational factor;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr || sgn(at(r, pc)) == 0) continue;
      factor = at(r, pc);
      for (int c = 0; c <= cols_; ++c) {
        if (sgn(at(pr, c)) != 0) at(r, c) -= factor * at(pr, c);
      }
    }
  }

  void DropRow(int r) {
    for (int rr = r; rr < rows_; ++rr) {
      for (int c = 0; c <= cols_; ++c) at(rr, c) = std::move(at(rr + 1, c));
    }
    --rows_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<Rational> cells_;
};

struct Simplex {
  Tableau t;
  std::vector<int> basis;
  std::vector<bool> banned;  // columns that may not enter

  // Rebuilds the reduced-cost row for `costs` under the current basis.
  void SetObjective(const std::vector<Rational>& costs) {
    for (int c = 0; c < t.cols(); ++c) {
      Rational z = -costs[c];
      for (int r = 0; r < t.rows(); ++r) {
        if (sgn(costs[basis[r]]) != 0 && sgn(t.at(r, c)) != 0) z += costs[basis[r]] * t.at(r, c);
      }
      t.cost(c) = z;
    }
    Rational value = 0;
    for (int r = 0; r < t.rows(); ++r) value += costs[basis[r]] * t.rhs(r);
    t.objective() = value;
  }

  // Returns false when unbounded.
  bool Run() {
    while (true) {
      int enter = -1;
      for (int c = 0; c < t.cols(); ++c) {
        if (!banned[c] && sgn(t.cost(c)) < 0) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < t.rows(); ++r) {
        if (sgn(t.at(r, enter)) <= 0) continue;
        Rational ratio = t.rhs(r) / t.at(r, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      t.Pivot(leave, enter);
      basis[leave] = enter;
    }
  }
};

}  // namespace

LpResult SolveLp(const LinearProgram& lp) {
  const int n = lp.num_vars;
  if (static_cast<int>(lp.objective.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "objective length != num_vars");
  }
  std::vector<bool> is_free = lp.free_vars;
  is_free.resize(n, false);

  // Column layout: structural (free variables take a second, negated column),
  // then one slack/surplus per inequality, then artificials.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (is_free[j]) neg_col[j] = cols++;
  }
  const int structural = cols;
  const int m = static_cast<int>(lp.constraints.size());
  std::vector<int> sign(m, 1);
  std::vector<Relation> rel(m);
  int slack_count = 0;
  int art_count = 0;
  for (int i = 0; i < m; ++i) {
    const LinearConstraint& c = lp.constraints[i];
    if (static_cast<int>(c.coeffs.size()) != n) {
      throw Error(ErrorCode::kInvalidArgument, "constraint length != num_vars");
    }
    rel[i] = c.relation;
    if (sgn(c.rhs) < 0) {
      sign[i] = -1;
      if (rel[i] == Relation::kLessEqual) {
        rel[i] = Relation::kGreaterEqual;
      } else if (rel[i] == Relation::kGreaterEqual) {
        rel[i] = Relation::kLessEqual;
      }
    }
    if (rel[i] != Relation::kEqual) ++slack_count;
    if (rel[i] != Relation::kLessEqual) ++art_count;
  }
  const int art_start = structural + slack_count;
  cols = art_start + art_count;

  Simplex sx{Tableau(m, cols), std::vector<int>(m), std::vector<bool>(cols, false)};
  int next_slack = structural;
  int next_art = art_start;
  for (int i = 0; i < m; ++i) {
    const LinearConstraint& c = lp.constraints[i];
    for (int j = 0; j < n; ++j) {
      if (sgn(c.coeffs[j]) == 0) continue;
      Rational v = sign[i] < 0 ? Rational(-c.coeffs[j]) : c.coeffs[j];
      sx.t.at(i, pos_col[j]) = v;
      if (neg_col[j] >= 0) sx.t.at(i, neg_col[j]) = -v;
    }
    sx.t.rhs(i) = sign[i] < 0 ? Rational(-c.rhs) : c.rhs;
    if (rel[i] == Relation::kLessEqual) {
      sx.t.at(i, next_slack) = 1;
      sx.basis[i] = next_slack++;
    } else {
      if (rel[i] == Relation::kGreaterEqual) sx.t.at(i, next_slack++) = -1;
      sx.t.at(i, next_art) = 1;
      sx.basis[i] = next_art++;
    }
  }

  LpResult result;
  if (art_count > 0) {
    std::vector<Rational> phase1(cols, Rational(0));
    for (int c = art_start; c < cols; ++c) phase1[c] = -1;
    sx.SetObjective(phase1);
    sx.Run();  // bounded above by zero
    if (sgn(sx.t.objective()) < 0) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (int r = 0; r < sx.t.rows();) {
      if (sx.basis[r] < art_start) {
        ++r;
        continue;
      }
      int enter = -1;
      for (int c = 0; c < art_start; ++c) {
        if (sgn(sx.t.at(r, c)) != 0) {
          enter = c;
          break;
        }
      }
      if (enter >= 0) {
        sx.t.Pivot(r, enter);
        sx.basis[r] = enter;
        ++r;
      } else {
        sx.t.DropRow(r);
        sx.basis.erase(sx.basis.begin() + r);
      }
    }
    for (int c = art_start; c < cols; ++c) sx.banned[c] = true;
  }

  std::vector<Rational> phase2(cols, Rational(0));
  for (int j = 0; j < n; ++j) {
    phase2[pos_col[j]] = lp.objective[j];
    if (neg_col[j] >= 0) phase2[neg_col[j]] = -lp.objective[j];
  }
  sx.SetObjective(phase2);
  if (!sx.Run()) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  std::vector<Rational> column_value(cols, Rational(0));
  for (int r = 0; r < sx.t.rows(); ++r) column_value[sx.basis[r]] = sx.t.rhs(r);
  result.status = LpStatus::kOptimal;
  result.objective = sx.t.objective();
  result.x.resize(n);
  for (int j = 0; j < n; ++j) {
    result.x[j] = column_value[pos_col[j]];
    if (neg_col[j] >= 0) result.x[j] -= column_value[neg_col[j]];
  }
  return result;
}

}  // namespace dolab
