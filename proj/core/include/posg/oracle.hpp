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

#include <functional>

#include "posg/game.hpp"
#include "posg/transducer.hpp"

namespace posg {

enum class Mode { almost_sure, positive };
const char *mode_name(Mode m);

// ---------------------------------------------------------------------
// Products and exact probabilities
// ---------------------------------------------------------------------

// Markov chain obtained by fixing both players' transducers. Nodes are
// reachable (state, mem1, mem2) triples.
struct ProductChain {
    struct Node {
        int q, m1, m2;
    };
    std::vector<Node> nodes;
    std::vector<std::vector<std::pair<int, Rat>>> trans;  // node -> [(node, p)]
    std::vector<std::pair<int, Rat>> init;                // distribution over nodes
    std::vector<uint8_t> target;                          // node's state in T
};

// Requires a normalized game (absorbing target); both transducers may be
// randomized.
ProductChain product_chain(const Game &g, const StrategyTransducer &sigma,
                           const StrategyTransducer &pi);

struct ChainQual {
    bool positive, almost_sure;
};
// Qualitative reachability of the target in the chain. Exact graph
// analysis: positive iff a target node is reachable; almost-sure iff no
// reachable node can avoid the target forever.
ChainQual chain_qualitative_reach(const ProductChain &c);

// Pr(avoid target forever) > 0, used to confirm refutations.
bool chain_positive_avoid(const ProductChain &c);

// Exact probability of reaching the target: rational Gaussian elimination
// on the reachable part of the chain.
Rat exact_reach_probability(const ProductChain &c);
Rat exact_prob(const Game &g, const StrategyTransducer &sigma,
               const StrategyTransducer &pi);

// ---------------------------------------------------------------------
// One-player views (the other side's strategy baked in)
// ---------------------------------------------------------------------

// Partial-observation one-player view: the controller picks one of
// `num_actions` each step and observes the class of the node. Transition
// supports only (qualitative analysis needs no numbers).
struct SupportPomdp {
    int num_actions = 0;
    int num_classes = 0;
    std::vector<int> obs;                            // node -> class
    std::vector<std::vector<std::vector<int>>> succ; // [node][action] -> nodes
    std::vector<uint8_t> target;                     // node hits T
    std::vector<int> init;                           // initial support
    std::vector<int> state_of;                       // underlying game state
};

// View of player 2 against a fixed player-1 strategy, and of player 1
// against a fixed player-2 strategy. Game must be normalized.
SupportPomdp p2_view(const Game &g, const StrategyTransducer &sigma);
SupportPomdp p1_view(const Game &g, const StrategyTransducer &pi);

enum class Tri { yes, no, unknown };

// Can the controller keep the play out of the target set forever with
// probability one, starting from the given belief support? Decided with
// the greatest fixpoint over belief supports reachable through actions
// whose successors never touch the target. `budget` caps the number of
// supports explored.
Tri pomdp_almost_sure_safety(const SupportPomdp &v, const std::vector<int> &support,
                             long budget = 200000);

// Can the controller reach the target with positive probability /
// probability one? Belief-support fixpoints (least fixpoint for positive,
// greatest-with-progress for almost-sure).
Tri pomdp_positive_reach(const SupportPomdp &v, long budget = 200000);
Tri pomdp_almost_sure_reach(const SupportPomdp &v, long budget = 200000);

// ---------------------------------------------------------------------
// Witness verification
// ---------------------------------------------------------------------

enum class VerifyStatus { verified, refuted, inconclusive };
const char *verify_status_name(VerifyStatus s);

struct VerifyResult {
    VerifyStatus status = VerifyStatus::inconclusive;
    std::string note;
    // For refutations: a player-2 strategy witnessing the failure,
    // double-checked on the two-strategy product chain.
    std::optional<StrategyTransducer> counter;
};

// Exact verification of a player-1 strategy against *every* player-2
// strategy (any memory, any randomization):
//   positive:    fails iff player 2 can keep the play away from the
//                target with probability one, decided by the belief
//                support safety family of player 2's view;
//   almost-sure: fails iff player 2 can avoid with positive probability,
//                which happens iff some support reachable in the avoid
//                dynamics contains a node from which player 2 alone is
//                almost-surely safe.
// Inconclusive only when the support budget is exhausted.
VerifyResult verify_witness(const Game &g, const StrategyTransducer &sigma,
                            Mode mode, long budget = 200000);

// ---------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------

// Enumerates canonical pure transducers for the player (memories numbered
// in order of first use; only product-reachable table entries are
// branched on, the rest are defaults). Calls cb for each; cb returning
// true stops early. Returns false if the leaf budget was exhausted.
bool enumerate_pure_strategies(const Game &g, int player, int memory,
                               long leaf_budget,
                               const std::function<bool(const StrategyTransducer &)> &cb);

struct OracleOptions {
    int p1_mem_max = 3;
    int p2_mem_max = 2;
    long leaf_budget = 2000000;     // per enumeration pass
    long support_budget = 200000;   // per qualitative check
};

struct OracleOutcome {
    Verdict verdict = Verdict::unknown;
    std::optional<StrategyTransducer> witness;   // when win
    std::optional<StrategyTransducer> refuter;   // when lose
    int found_memory = -1;    // memory of the winning witness
    int refuted_up_to = 0;    // player-1 memories exhaustively refuted
    bool truncated = false;   // some budget was hit
    std::string note;
};

// Independent decision procedure: searches for a player-1 witness by
// canonical enumeration with exact verification, and for a player-2
// refuter that defeats every player-1 strategy (decided by belief-support
// fixpoints on player 1's view of the refuter-fixed game). Sound in both
// directions; within the given bounds only, hence the explicit unknown.
OracleOutcome brute_force_decide(const Game &g, Mode mode,
                                 const OracleOptions &opt = {});

}  // namespace posg
