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

#ifndef DOLAB_GAME_IO_H_
#define DOLAB_GAME_IO_H_

#include <string>
#include <string_view>

#include "dolab/posg.h"

namespace dolab {

// Line-oriented text format. Records appear in a fixed order so that equal
// games serialize to identical bytes:
//
//   dolab-posg 1
//   name <text>
//   actions <|A1|> <|A2|>
//   states <n>
//   zero_sum <0|1>
//   meta <key> <text>                 (by key)
//   start <state> <prob>              (by state)
//   observe <state> <o1> <o2>         (nonterminals, by state)
//   terminal <state> <r1> <r2>        (by state)
//   transition <state> <a1> <a2> <next>:<prob> ...
//   end
//
// Rationals are written as num/den.
std::string WriteGame(const Posg& g);

// Throws Error(kMalformed) with the offending line, or any Posg::Build error.
Posg ReadGame(std::string_view text);

// Throw Error(kIoError) on file system failures.
void SaveGame(const std::string& path, const Posg& g);
Posg LoadGame(const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace dolab

#endif  // DOLAB_GAME_IO_H_
