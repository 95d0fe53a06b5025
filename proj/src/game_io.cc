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

#include "dolab/game_io.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "dolab/errors.h"

namespace dolab {
namespace {

constexpr std::string_view kMagic = "dolab-posg 1";

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : in_(std::string(text)) {}

  bool Next() {
    while (std::getline(in_, line_)) {
      ++number_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      if (line_.empty()) continue;
      tokens_ = Split(line_);
      return true;
    }
    return false;
  }

  const std::string& line() const { return line_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Text after the keyword, verbatim.
  std::string Rest() const {
    auto pos = line_.find(' ');
    return pos == std::string::npos ? "" : line_.substr(pos + 1);
  }

  [[noreturn]] void Fail(const std::string& why) const {
    throw Error(ErrorCode::kMalformed,
                "line " + std::to_string(number_) + " (" + line_ + "): " + why);
  }

  void Arity(std::size_t n) const {
    if (tokens_.size() != n) Fail("expected " + std::to_string(n - 1) + " fields");
  }

  int Int(std::size_t i) const {
    try {
      std::size_t used = 0;
      int v = std::stoi(tokens_.at(i), &used);
      if (used != tokens_[i].size()) Fail("bad integer '" + tokens_[i] + "'");
      return v;
    } catch (const std::logic_error&) {
      Fail("bad integer '" + tokens_.at(i) + "'");
    }
  }

  Rational Rat(const std::string& s) const {
    try {
      return ParseRational(s);
    } catch (const std::invalid_argument& e) {
      Fail(e.what());
    }
  }

 private:
  std::istringstream in_;
  std::string line_;
  std::vector<std::string> tokens_;
  int number_ = 0;
};

}  // namespace

std::string WriteGame(const Posg& g) {
  const PosgSpec& spec = g.spec();
  std::ostringstream out;
  out << kMagic << "\n";
  out << "name " << spec.name << "\n";
  out << "actions " << spec.num_actions[0] << " " << spec.num_actions[1] << "\n";
  out << "states " << spec.num_states << "\n";
  out << "zero_sum " << (spec.zero_sum ? 1 : 0) << "\n";
  for (const auto& [key, value] : spec.metadata) out << "meta " << key << " " << value << "\n";
  for (const auto& [s, p] : spec.start) out << "start " << s << " " << FormatRational(p) << "\n";
  for (const auto& [s, o] : spec.observations) {
    out << "observe " << s << " " << o.first << " " << o.second << "\n";
  }
  for (const auto& [s, r] : spec.rewards) {
    out << "terminal " << s << " " << FormatRational(r.first) << " " << FormatRational(r.second)
        << "\n";
  }
  for (const TransitionSpec& t : spec.transitions) {
    out << "transition " << t.state << " " << t.a1 << " " << t.a2;
    for (const Outcome& o : t.outcomes) out << " " << o.next << ":" << FormatRational(o.prob);
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

Posg ReadGame(std::string_view text) {
  LineReader r(text);
  if (!r.Next() || r.line() != kMagic) {
    throw Error(ErrorCode::kMalformed, "missing '" + std::string(kMagic) + "' header");
  }
  PosgSpec spec;
  bool ended = false;
  while (r.Next()) {
    if (ended) r.Fail("content after 'end'");
    const auto& t = r.tokens();
    const std::string& key = t[0];
    if (key == "name") {
      spec.name = r.Rest();
    } else if (key == "actions") {
      r.Arity(3);
      spec.num_actions = {r.Int(1), r.Int(2)};
    } else if (key == "states") {
      r.Arity(2);
      spec.num_states = r.Int(1);
    } else if (key == "zero_sum") {
      r.Arity(2);
      spec.zero_sum = r.Int(1) != 0;
    } else if (key == "meta") {
      if (t.size() < 2) r.Fail("meta needs a key");
      std::string rest = r.Rest();
      auto pos = rest.find(' ');
      spec.metadata[t[1]] = pos == std::string::npos ? "" : rest.substr(pos + 1);
    } else if (key == "start") {
      r.Arity(3);
      spec.start.push_back({r.Int(1), r.Rat(t[2])});
    } else if (key == "observe") {
      r.Arity(4);
      if (!spec.observations.emplace(r.Int(1), std::make_pair(r.Int(2), r.Int(3))).second) {
        r.Fail("duplicate observation");
      }
    } else if (key == "terminal") {
      r.Arity(4);
      if (!spec.rewards.emplace(r.Int(1), std::make_pair(r.Rat(t[2]), r.Rat(t[3]))).second) {
        r.Fail("duplicate terminal");
      }
    } else if (key == "transition") {
      if (t.size() < 5) r.Fail("transition needs at least one outcome");
      TransitionSpec ts{r.Int(1), r.Int(2), r.Int(3), {}};
      for (std::size_t i = 4; i < t.size(); ++i) {
        auto colon = t[i].find(':');
        if (colon == std::string::npos) r.Fail("outcome '" + t[i] + "' lacks ':'");
        int next = 0;
        try {
          std::size_t used = 0;
          next = std::stoi(t[i].substr(0, colon), &used);
          if (used != colon) r.Fail("bad state in '" + t[i] + "'");
        } catch (const std::logic_error&) {
          r.Fail("bad state in '" + t[i] + "'");
        }
        ts.outcomes.push_back({next, r.Rat(t[i].substr(colon + 1))});
      }
      spec.transitions.push_back(std::move(ts));
    } else if (key == "end") {
      r.Arity(1);
      ended = true;
    } else {
      r.Fail("unknown record '" + key + "'");
    }
  }
  if (!ended) throw Error(ErrorCode::kMalformed, "missing 'end'");
  return Posg::Build(std::move(spec));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read " + path);
  return out.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

void SaveGame(const std::string& path, const Posg& g) { WriteFile(path, WriteGame(g)); }

Posg LoadGame(const std::string& path) { return ReadGame(ReadFile(path)); }

}  // namespace dolab
