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

#include "posg/game.hpp"

namespace posg {

// Named example games exercised by the test suite and the `example` CLI
// command:
//
//   fig1   4 states; player 1 sees only whether the target was reached,
//          player 2 has perfect observation. Almost-sure win needs memory
//          (alternate the two actions); no memoryless strategy wins.
//   fig3   7 states; player 1 has perfect observation, player 2 is blind.
//          Almost-sure win needs randomness harvesting across rounds;
//          every memoryless pure strategy loses.
//   l<n>   doubling ladder: player 1 (perfect) must split 2^n
//          indistinguishable play prefixes against a blind adversary.
//   g<n>   separator-staged gadget family; adversary observes only the
//          initial state, the separator stage and the target.
//   fig9   6 states; restart/play structure, player 1 perfect, player 2
//          blind. Fixed action pairs give exactly probability 1/2.
//   fig10  13 states; the action-commitment expansion of fig1 (each state
//          splits into the state plus one commitment state per action,
//          with a sink punishing a changed commitment).
//
// The counter-machine family c<n> is not a game; see counter_system.hpp.
//
// Throws std::invalid_argument for unknown names (including c<n>).
Game build_fixture(const std::string &name, int n = 0);

// True if the name (fig1, fig3, l2, g1, fig9, fig10, ...) denotes a game
// fixture; c<n> and unknown names return false.
bool is_game_fixture(const std::string &name);

}  // namespace posg
