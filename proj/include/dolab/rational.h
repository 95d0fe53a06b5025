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

#ifndef DOLAB_RATIONAL_H_
#define DOLAB_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dolab {

// Every payoff, probability and certificate in the library is exact.
using Rational = mpq_class;
using BigInt = mpz_class;

// Always "num/den", including integers ("-1/1", "0/1").
std::string FormatRational(const Rational& q);

// Accepts "num/den" or a bare integer. Throws std::invalid_argument.
Rational ParseRational(std::string_view text);

std::string FormatBigInt(const BigInt& z);
BigInt ParseBigInt(std::string_view text);

inline Rational MakeRational(std::int64_t num, std::int64_t den = 1) {
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

}  // namespace dolab

#endif  // DOLAB_RATIONAL_H_
