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

#include <string>
#include <vector>

#include "posg/game.hpp"

namespace posg {

// Finite-memory observation-based strategy.
//
// Timing convention, used consistently by the verifier and the solvers: at
// step t the player observes the class o_t of the current state, plays
// next(m_t, o_t), and after the state moves the memory advances with the
// *new* observation: m_{t+1} = update(m_t, o_{t+1}). The initial memory m0
// is in force before the first observation, so the first action is
// next(m0, o_0). Memory at time t is therefore a function of o_1..o_t and
// the action at time t of the full observation prefix o_0..o_t.
//
// A row may be pure (action[m][o] >= 0) or randomized (action[m][o] == -1
// and action_dist[m][o] holds a distribution over the player's actions).
struct StrategyTransducer {
    int player = 1;       // 1 or 2
    int num_classes = 0;  // observation alphabet size of that player
    int memory = 1;
    int initial = 0;
    std::vector<std::vector<int>> update;   // [m][o] -> m'
    std::vector<std::vector<int>> action;   // [m][o] -> action id, -1 if randomized
    std::vector<std::vector<std::vector<Rat>>> action_dist;  // [m][o] -> probs

    static StrategyTransducer pure(int player, int memory, int classes);
    bool randomized() const;
    bool pure_row(int m, int o) const { return action[m][o] >= 0; }

    // Structural checks against a game (alphabet sizes, totality, action
    // ids in range, rows summing to one). Empty result means valid.
    std::vector<std::string> validate_against(const Game &g) const;
};

struct StratParseResult {
    std::optional<StrategyTransducer> strat;
    std::vector<std::string> errors;
    bool ok() const { return strat.has_value() && errors.empty(); }
};

// Text format (interpreted against a game for action names):
//
//   strategy
//   player 1
//   classes 2
//   memory 2
//   initial 0
//   update 0 0 -> 1
//   ...             (one row per memory/class pair)
//   next 0 0 -> a
//   next 1 0 -> { a: 1/2, b: 1/2 }
StratParseResult parse_strategy(const std::string &text, const Game &g);
StratParseResult parse_strategy_file(const std::string &path, const Game &g);
std::string serialize_strategy(const StrategyTransducer &t, const Game &g);
void write_strategy_file(const StrategyTransducer &t, const Game &g,
                         const std::string &path);

// Solver outcome. Full decision procedures return win or lose; procedures
// that work under a resource or enumeration bound report unknown when the
// bound was hit without a certified answer either way.
enum class Verdict { win, lose, unknown };
const char *verdict_name(Verdict v);

struct QualitativeAnswer {
    Verdict verdict = Verdict::unknown;
    // Present exactly when verdict == win.
    std::optional<StrategyTransducer> witness;
    std::string note;        // human-readable diagnostics
    bool truncated = false;  // some bound was hit along the way
};

}  // namespace posg
