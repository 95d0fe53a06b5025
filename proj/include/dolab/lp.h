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

#ifndef DOLAB_LP_H_
#define DOLAB_LP_H_

#include <vector>

#include "dolab/rational.h"

namespace dolab {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<Rational> coeffs;  // one per variable
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// maximize objective . x  subject to constraints, x_j >= 0 unless free.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<bool> free_vars;  // empty: all variables nonnegative

  LinearConstraint& AddConstraint(Relation relation, Rational rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> x;
};

// Dense two-phase primal simplex over exact rationals. Bland's rule for both
// entering and leaving variables, so it terminates on degenerate problems.
LpResult SolveLp(const LinearProgram& lp);

}  // namespace dolab

#endif  // DOLAB_LP_H_
