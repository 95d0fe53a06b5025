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

#include "dolab/rational.h"

#include <stdexcept>

namespace dolab {

std::string FormatRational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational ParseRational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  BigInt num = ParseBigInt(s.substr(0, slash));
  BigInt den = 1;
  if (slash != std::string::npos) den = ParseBigInt(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string FormatBigInt(const BigInt& z) { return z.get_str(); }

BigInt ParseBigInt(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw std::invalid_argument("malformed integer '" + s + "'");
    }
  }
  if (s[0] == '+') s = s.substr(1);
  return BigInt(s, 10);
}

}  // namespace dolab
