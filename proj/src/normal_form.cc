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

#include "dolab/normal_form.h"

#include <utility>

#include "dolab/errors.h"

namespace dolab {

Matrix Matrix::Transposed() const {
  Matrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Matrix Matrix::Negated() const {
  Matrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(r, c) = -(*this)(r, c);
  }
  return out;
}

Matrix Matrix::Submatrix(const std::vector<int>& rows,
                         const std::vector<int>& cols) const {
  Matrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<int>(r), static_cast<int>(c)) = (*this)(rows[r], cols[c]);
    }
  }
  return out;
}

NormalFormGame NormalFormGame::ZeroSum(Matrix payoff1) {
  NormalFormGame g;
  g.payoff2 = payoff1.Negated();
  g.payoff1 = std::move(payoff1);
  g.zero_sum = true;
  return g;
}

NormalFormGame NormalFormGame::General(Matrix payoff1, Matrix payoff2) {
  NormalFormGame g;
  g.payoff1 = std::move(payoff1);
  g.payoff2 = std::move(payoff2);
  g.Validate();
  return g;
}

void NormalFormGame::Validate() const {
  if (payoff1.rows() != payoff2.rows() || payoff1.cols() != payoff2.cols()) {
    throw Error(ErrorCode::kMalformed, "payoff matrices differ in shape");
  }
  if (!row_labels.empty() && static_cast<int>(row_labels.size()) != rows()) {
    throw Error(ErrorCode::kMalformed, "row label count mismatch");
  }
  if (!col_labels.empty() && static_cast<int>(col_labels.size()) != cols()) {
    throw Error(ErrorCode::kMalformed, "column label count mismatch");
  }
  if (zero_sum) {
    for (int r = 0; r < rows(); ++r) {
      for (int c = 0; c < cols(); ++c) {
        if (payoff1(r, c) + payoff2(r, c) != 0) {
          throw Error(ErrorCode::kZeroSumViolation, "entries do not cancel");
        }
      }
    }
  }
}

NormalFormGame NormalFormGame::Restricted(const std::vector<int>& rows,
                                          const std::vector<int>& cols) const {
  NormalFormGame g;
  g.payoff1 = payoff1.Submatrix(rows, cols);
  g.payoff2 = payoff2.Submatrix(rows, cols);
  g.zero_sum = zero_sum;
  for (int r : rows) g.row_labels.push_back(RowLabel(r));
  for (int c : cols) g.col_labels.push_back(ColLabel(c));
  return g;
}

namespace {

// payoff(own, opp) accessor for one player's view.
template <typename Payoff>
std::vector<bool> DominatedStrategies(const std::vector<int>& own,
                                      const std::vector<int>& opp,
                                      Dominance kind, Payoff payoff) {
  std::vector<bool> dominated(own.size(), false);
  for (std::size_t i = 0; i < own.size(); ++i) {
    for (std::size_t j = 0; j < own.size() && !dominated[i]; ++j) {
      if (i == j) continue;
      bool all_geq = true;
      bool all_gt = true;
      bool some_gt = false;
      for (int o : opp) {
        const Rational& better = payoff(own[j], o);
        const Rational& worse = payoff(own[i], o);
        int cmp_result = cmp(better, worse);
        if (cmp_result < 0) {
          all_geq = false;
          break;
        }
        if (cmp_result == 0) all_gt = false;
        if (cmp_result > 0) some_gt = true;
      }
      if (kind == Dominance::kStrictPure) {
        dominated[i] = all_geq && all_gt && !opp.empty();
      } else {
        dominated[i] = all_geq && some_gt;
      }
    }
  }
  return dominated;
}

std::vector<int> Keep(const std::vector<int>& ids, const std::vector<bool>& drop) {
  std::vector<int> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!drop[i]) out.push_back(ids[i]);
  }
  return out;
}

}  // namespace

ReducedGame ReduceDominated(const NormalFormGame& nfg, Dominance kind) {
  std::vector<int> rows(nfg.rows());
  std::vector<int> cols(nfg.cols());
  for (int r = 0; r < nfg.rows(); ++r) rows[r] = r;
  for (int c = 0; c < nfg.cols(); ++c) cols[c] = c;

  while (true) {
    auto row_drop = DominatedStrategies(
        rows, cols, kind,
        [&](int r, int c) -> const Rational& { return nfg.payoff1(r, c); });
    auto col_drop = DominatedStrategies(
        cols, rows, kind,
        [&](int c, int r) -> const Rational& { return nfg.payoff2(r, c); });
    std::vector<int> next_rows = Keep(rows, row_drop);
    std::vector<int> next_cols = Keep(cols, col_drop);
    if (next_rows.size() == rows.size() && next_cols.size() == cols.size()) break;
    rows = std::move(next_rows);
    cols = std::move(next_cols);
  }
  ReducedGame out;
  out.game = nfg.Restricted(rows, cols);
  out.rows = std::move(rows);
  out.cols = std::move(cols);
  return out;
}

}  // namespace dolab
