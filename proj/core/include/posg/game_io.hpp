/*
 * Copyright 2026 posg contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>

#include "posg/game.hpp"

namespace posg {

// Parse error with a position. line/col are 1-based; line 0 means the
// error is about the file as a whole (e.g. a missing section).
struct ParseError {
    int line = 0, col = 0;
    std::string message;
    std::string render(const std::string &filename) const;
};

struct ParseResult {
    std::optional<Game> game;
    std::vector<ParseError> errors;
    bool ok() const { return game.has_value() && errors.empty(); }
};

// Text format, one section per keyword:
//
//   # comment
//   states q0 q1 q2 smiley
//   init q0                      (or:  init { q1: 1/2, q2: 1/2 })
//   actions1 a b
//   actions2 a b
//   obs1 { q0 q1 q2 } { smiley }
//   obs2 { q0 } { q1 } { q2 } { smiley }
//   target smiley
//   safe q0 q1 q2 smiley         (optional)
//   delta
//   q0 a a -> { q1: 1 }
//   q0 a b -> { q2: 1/2, q0: 1/2 }
//   ...
//
// Probabilities are rational literals (1, 1/2, 3/8). The delta section
// must be total: one entry per (state, action1, action2) triple. The obs
// sections must partition the state set. Class ids follow declaration
// order. Errors carry line:column positions.
ParseResult parse_game(const std::string &text);
ParseResult parse_game_file(const std::string &path);

std::string serialize_game(const Game &g);
void write_game_file(const Game &g, const std::string &path);

// Set formatting helper used in reports and diagnostics: "{q0, q1}".
std::string set_to_string(const Game &g, StateSet s);

}  // namespace posg
