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
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace posg {

// Exact rational probability. Canonicalized by gmp on construction.
using Rat = mpq_class;

// Set of state ids as a bitmask. Games are capped at 64 states; the
// solvers that need bigger universes (arena vertices, belief pairs,
// counting functions) use their own dense indexing instead.
using StateSet = uint64_t;

constexpr int kMaxStates = 64;

inline StateSet bit(int q) { return StateSet{1} << q; }
inline bool contains(StateSet s, int q) { return (s >> q) & 1; }
inline int popcount(StateSet s) { return __builtin_popcountll(s); }
// Iterate set bits: for (int q : bits(s)) ...
struct BitRange {
    StateSet s;
    struct It {
        StateSet rest;
        int operator*() const { return __builtin_ctzll(rest); }
        It &operator++() { rest &= rest - 1; return *this; }
        bool operator!=(const It &o) const { return rest != o.rest; }
    };
    It begin() const { return {s}; }
    It end() const { return {0}; }
};
inline BitRange bits(StateSet s) { return {s}; }

// Sparse distribution over state ids, entries sorted by state, probabilities
// positive and summing to one.
struct Dist {
    std::vector<std::pair<int, Rat>> entries;

    StateSet support() const {
        StateSet s = 0;
        for (auto &[q, p] : entries) s |= bit(q);
        return s;
    }
    bool is_dirac() const { return entries.size() == 1; }
    Rat prob_of(int q) const {
        for (auto &[r, p] : entries)
            if (r == q) return p;
        return Rat(0);
    }
    void push(int q, const Rat &p);  // accumulates, keeps sorted
    bool operator==(const Dist &o) const { return entries == o.entries; }
};

Dist dirac(int q);
Dist uniform(const std::vector<int> &qs);

// Two-player stochastic game with observation partitions for both players.
// Actions are invisible: all information either player receives is the
// observation class of the current state, so a strategy is a function of
// the sequence of observation classes seen so far (implemented as a finite
// transducer, see transducer.hpp).
//
// delta[q][a][b] is the distribution over successor states when player 1
// plays action a and player 2 plays action b at state q. It must be total.
//
// obs1/obs2 map each state to its observation class id; class ids are
// stable (they follow the order blocks were declared in) and the blocks
// partition the state space.
struct Game {
    std::vector<std::string> state_names;
    std::vector<std::string> actions1, actions2;
    Dist init;                       // initial distribution (often Dirac)
    std::vector<std::vector<std::vector<Dist>>> delta;  // [q][a][b]
    std::vector<int> obs1, obs2;     // state -> class id
    StateSet target = 0;             // reachability target T
    std::optional<StateSet> safe;    // optional safety region constraint

    int num_states() const { return (int)state_names.size(); }
    int num_a1() const { return (int)actions1.size(); }
    int num_a2() const { return (int)actions2.size(); }
    StateSet all_states() const {
        int n = num_states();
        return n == 64 ? ~StateSet{0} : (bit(n) - 1);
    }

    int state_id(const std::string &name) const;   // -1 if absent
    int action1_id(const std::string &name) const;
    int action2_id(const std::string &name) const;

    int num_obs1_classes() const;
    int num_obs2_classes() const;
    StateSet obs1_class(int id) const;   // states in class id
    StateSet obs2_class(int id) const;
    std::vector<StateSet> obs1_classes() const;
    std::vector<StateSet> obs2_classes() const;

    // True when the player's partition is all singletons / a single class.
    bool p1_perfect() const;
    bool p2_perfect() const;
    bool p1_blind() const;
    bool p2_blind() const;

    bool is_target_absorbing() const;
};

// Classification used by the solve dispatcher.
struct SideInfo {
    bool p1_perfect, p2_perfect, p1_blind, p2_blind;
};
SideInfo classify(const Game &g);

// Structural well-formedness: totality of delta, probabilities summing to
// one, partitions covering the state space exactly once, target nonempty
// and inside the safe region when one is given, state cap respected.
// Returns human-readable diagnostics; empty means valid.
std::vector<std::string> validate(const Game &g);

// One-step successors of a state set under a fixed action pair, and under
// a fixed player-1 action with player 2 unrestricted.
StateSet post_set(const Game &g, StateSet s, int a, int b);
StateSet post_any(const Game &g, StateSet s, int a);

// Canonical form: initial distribution folded into a fresh Dirac initial
// state when it is not already Dirac, and every target state made
// absorbing (all action pairs loop with probability one). Observation
// classes of a fresh initial state are fresh singletons for both players.
// Idempotent.
Game normalize(const Game &g);

// Repeated-reachability to plain reachability: adds a fresh absorbing
// target state reached from every original target state with probability
// one half on every action pair (remaining mass rescaled). Winning with
// probability one (resp. positive probability) for visiting the original
// target infinitely often coincides with reaching the fresh target in the
// result. The fresh state gets fresh singleton observation classes.
Game buchi_to_reach(const Game &g);

}  // namespace posg
