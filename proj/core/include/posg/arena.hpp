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

#include <cstdint>
#include <string>
#include <vector>

namespace posg {

// Finite turn-based two-player game graph with perfect information and no
// probabilities. Objectives are stated for player 1; player 2 is the
// adversary. Every vertex must have at least one outgoing edge.
struct ArenaGame {
    struct Edge {
        int label;  // caller-defined move id
        int to;
    };
    std::vector<int> owner;               // 0 = player 1, 1 = player 2
    std::vector<std::vector<Edge>> out;
    std::vector<std::string> names;       // diagnostics only

    int add_vertex(int own, std::string name = std::string());
    void add_edge(int from, int label, int to);
    int num_vertices() const { return (int)owner.size(); }
    std::vector<std::string> validate() const;  // totality, edge ranges
};

using VertexSet = std::vector<uint8_t>;  // indexed by vertex id

inline bool in_set(const VertexSet &s, int v) { return s[v] != 0; }
int count_set(const VertexSet &s);

// Edge choice per vertex (index into out[v]); -1 where the strategy is
// unconstrained (vertices owned by the other player, or losing region).
struct MemorylessStrategy {
    std::vector<int> choice;
};

// win1 is player 1's winning region; strat1 is a memoryless winning
// strategy for player 1 on win1, strat2 one for player 2 on the
// complement. Ties are broken toward the lexicographically least edge
// index, so results are deterministic.
struct ArenaSolution {
    VertexSet win1;
    MemorylessStrategy strat1, strat2;
};

// Classical attractor computation, exposed because the partial-observation
// solvers build on it directly: returns the set from which `player` can
// force a visit to `goal`, a rank (BFS distance, -1 outside) and the
// least-edge attractor strategy.
struct Attractor {
    VertexSet set;
    std::vector<int> rank;
    MemorylessStrategy strat;  // for `player`, on the attractor
};
Attractor attractor(const ArenaGame &g, const VertexSet &goal, int player,
                    const VertexSet *within = nullptr);

// Reachability: player 1 wants to visit goal at least once.
ArenaSolution solve_reach(const ArenaGame &g, const VertexSet &goal);
// Safety: player 1 wants to stay inside safe forever.
ArenaSolution solve_safety(const ArenaGame &g, const VertexSet &safe);
// Repeated reachability: player 1 wants to visit goal infinitely often.
ArenaSolution solve_buchi(const ArenaGame &g, const VertexSet &goal);
// Player 2's own objective solved directly (used to cross-check
// determinacy instead of complementing): player 2 wants only finitely
// many visits to goal.
VertexSet solve_cobuchi_p2(const ArenaGame &g, const VertexSet &goal);

// cobuchi: the verified player wants only finitely many goal visits.
enum class Objective { reach, safety, buchi, cobuchi };

// Checks that fixing `player`'s choices forces the objective from every
// vertex of `from` against the unrestricted opponent. Exact (graph
// analysis, no sampling).
bool verify_arena_strategy(const ArenaGame &g, Objective obj,
                           const VertexSet &goal, int player,
                           const MemorylessStrategy &strat,
                           const VertexSet &from);

}  // namespace posg
