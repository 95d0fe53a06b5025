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

#ifndef DOLAB_NORMAL_FORM_H_
#define DOLAB_NORMAL_FORM_H_

#include <cstdint>
#include <vector>

#include "dolab/rational.h"

namespace dolab {

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  Matrix Transposed() const;
  Matrix Negated() const;
  Matrix Submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// Two-player normal-form game. Row player is player 1.
struct NormalFormGame {
  Matrix payoff1;
  Matrix payoff2;
  bool zero_sum = false;
  // Optional integer encodings of the strategies (policy indices, family
  // numbers). Empty means "strategy i is labelled i".
  std::vector<std::int64_t> row_labels;
  std::vector<std::int64_t> col_labels;

  int rows() const { return payoff1.rows(); }
  int cols() const { return payoff1.cols(); }
  std::int64_t RowLabel(int r) const { return row_labels.empty() ? r : row_labels[r]; }
  std::int64_t ColLabel(int c) const { return col_labels.empty() ? c : col_labels[c]; }

  // Builds a zero-sum game from the row player's payoffs.
  static NormalFormGame ZeroSum(Matrix payoff1);
  static NormalFormGame General(Matrix payoff1, Matrix payoff2);

  // Throws Error(kMalformed) on shape mismatch or a false zero-sum flag.
  void Validate() const;

  NormalFormGame Restricted(const std::vector<int>& rows,
                            const std::vector<int>& cols) const;
};

enum class Dominance {
  // Removed if some other remaining pure strategy is strictly better against
  // every remaining opponent strategy.
  kStrictPure,
  // Removed if some other remaining pure strategy is at least as good
  // everywhere and strictly better somewhere. All dominated strategies of
  // both players are removed together in each round, so the fixed point does
  // not depend on an elimination order.
  kWeakPure,
};

struct ReducedGame {
  NormalFormGame game;
  std::vector<int> rows;  // surviving original row indices, ascending
  std::vector<int> cols;
};

ReducedGame ReduceDominated(const NormalFormGame& nfg,
                            Dominance kind = Dominance::kStrictPure);

}  // namespace dolab

#endif  // DOLAB_NORMAL_FORM_H_
