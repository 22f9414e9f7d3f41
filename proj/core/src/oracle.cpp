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

#include "posg/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace posg {

const char *mode_name(Mode m) {
    return m == Mode::almost_sure ? "almost-sure" : "positive";
}
const char *verify_status_name(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::verified: return "verified";
        case VerifyStatus::refuted: return "refuted";
        default: return "inconclusive";
    }
}

// ---------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------

namespace {

// Action distribution of a transducer row as (action, prob) pairs.
std::vector<std::pair<int, Rat>> row_actions(const StrategyTransducer &t, int m, int o) {
    std::vector<std::pair<int, Rat>> out;
    if (t.action[m][o] >= 0) {
        out.push_back({t.action[m][o], Rat(1)});
    } else {
        for (int a = 0; a < (int)t.action_dist[m][o].size(); a++)
            if (t.action_dist[m][o][a] > 0) out.push_back({a, t.action_dist[m][o][a]});
    }
    return out;
}

// Pure action support of a row (ignores probabilities).
std::vector<int> row_action_support(const StrategyTransducer &t, int m, int o) {
    std::vector<int> out;
    for (auto &[a, p] : row_actions(t, m, o)) out.push_back(a);
    return out;
}

}  // namespace

ProductChain product_chain(const Game &g, const StrategyTransducer &sigma,
                           const StrategyTransducer &pi) {
    assert(g.is_target_absorbing());
    ProductChain c;
    std::map<std::tuple<int, int, int>, int> id;
    std::deque<int> work;
    auto node = [&](int q, int m1, int m2) {
        auto key = std::make_tuple(q, m1, m2);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int v = (int)c.nodes.size();
        id[key] = v;
        c.nodes.push_back({q, m1, m2});
        c.trans.emplace_back();
        c.target.push_back(contains(g.target, q));
        work.push_back(v);
        return v;
    };
    for (auto &[q, p] : g.init.entries)
        c.init.push_back({node(q, sigma.initial, pi.initial), p});
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        auto [q, m1, m2] = std::make_tuple(c.nodes[v].q, c.nodes[v].m1, c.nodes[v].m2);
        std::map<int, Rat> acc;
        std::map<int, std::tuple<int, int>> meta;  // successor node -> ids (stable)
        for (auto &[a, pa] : row_actions(sigma, m1, g.obs1[q]))
            for (auto &[b, pb] : row_actions(pi, m2, g.obs2[q]))
                for (auto &[r, pr] : g.delta[q][a][b].entries) {
                    int m1n = sigma.update[m1][g.obs1[r]];
                    int m2n = pi.update[m2][g.obs2[r]];
                    int w = node(r, m1n, m2n);
                    acc[w] += pa * pb * pr;
                    meta[w] = {m1n, m2n};
                }
        for (auto &[w, p] : acc) c.trans[v].push_back({w, p});
    }
    return c;
}

ChainQual chain_qualitative_reach(const ProductChain &c) {
    int n = (int)c.nodes.size();
    // Reachable nodes.
    std::vector<uint8_t> reach(n, 0);
    std::deque<int> q;
    for (auto &[v, p] : c.init)
        if (!reach[v]) { reach[v] = 1; q.push_back(v); }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto &[w, p] : c.trans[v])
            if (!reach[w]) { reach[w] = 1; q.push_back(w); }
    }
    bool positive = false;
    for (int v = 0; v < n; v++)
        if (reach[v] && c.target[v]) positive = true;
    // can_reach_target via backward closure.
    std::vector<uint8_t> can(n, 0);
    std::vector<std::vector<int>> rev(n);
    for (int v = 0; v < n; v++)
        for (auto &[w, p] : c.trans[v]) rev[w].push_back(v);
    std::deque<int> bq;
    for (int v = 0; v < n; v++)
        if (c.target[v]) { can[v] = 1; bq.push_back(v); }
    while (!bq.empty()) {
        int v = bq.front();
        bq.pop_front();
        for (int u : rev[v])
            if (!can[u]) { can[u] = 1; bq.push_back(u); }
    }
    bool almost = true;
    for (int v = 0; v < n; v++)
        if (reach[v] && !can[v]) almost = false;
    return {positive, almost && positive};
}

bool chain_positive_avoid(const ProductChain &c) {
    // Positive probability of never hitting the target iff some initial
    // node can start an infinite target-free path (gfp over the
    // target-free subgraph; total chains always extend paths).
    int n = (int)c.nodes.size();
    std::vector<uint8_t> x(n);
    for (int v = 0; v < n; v++) x[v] = !c.target[v];
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; v++) {
            if (!x[v]) continue;
            bool ok = false;
            for (auto &[w, p] : c.trans[v])
                if (x[w]) ok = true;
            if (!ok) { x[v] = 0; changed = true; }
        }
    }
    for (auto &[v, p] : c.init)
        if (x[v]) return true;
    return false;
}

Rat exact_reach_probability(const ProductChain &c) {
    int n = (int)c.nodes.size();
    // can-reach-target closure.
    std::vector<std::vector<int>> rev(n);
    for (int v = 0; v < n; v++)
        for (auto &[w, p] : c.trans[v]) rev[w].push_back(v);
    std::vector<uint8_t> can(n, 0);
    std::deque<int> bq;
    for (int v = 0; v < n; v++)
        if (c.target[v]) { can[v] = 1; bq.push_back(v); }
    while (!bq.empty()) {
        int v = bq.front();
        bq.pop_front();
        for (int u : rev[v])
            if (!can[u]) { can[u] = 1; bq.push_back(u); }
    }
    // Unknowns: nodes that can reach the target but are not in it.
    std::vector<int> idx(n, -1);
    std::vector<int> vars;
    for (int v = 0; v < n; v++)
        if (can[v] && !c.target[v]) {
            idx[v] = (int)vars.size();
            vars.push_back(v);
        }
    int m = (int)vars.size();
    // (I - P) x = b, b_i = mass into target (or via target-certain nodes).
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m + 1, Rat(0)));
    for (int i = 0; i < m; i++) {
        A[i][i] = 1;
        for (auto &[w, p] : c.trans[vars[i]]) {
            if (c.target[w])
                A[i][m] += p;
            else if (idx[w] >= 0)
                A[i][idx[w]] -= p;
            // mass to nodes that cannot reach the target contributes 0
        }
    }
    for (int col = 0; col < m; col++) {
        int piv = -1;
        for (int r = col; r < m; r++)
            if (A[r][col] != 0) { piv = r; break; }
        assert(piv >= 0 && "reach system is non-singular");
        std::swap(A[piv], A[col]);
        Rat d = A[col][col];
        for (int k = col; k <= m; k++) A[col][k] /= d;
        for (int r = 0; r < m; r++) {
            if (r == col || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (int k = col; k <= m; k++) A[r][k] -= f * A[col][k];
        }
    }
    Rat total(0);
    for (auto &[v, p] : c.init) {
        if (c.target[v])
            total += p;
        else if (idx[v] >= 0)
            total += p * A[idx[v]][m];
    }
    return total;
}

Rat exact_prob(const Game &g, const StrategyTransducer &sigma,
               const StrategyTransducer &pi) {
    Game ng = normalize(g);
    return exact_reach_probability(product_chain(ng, sigma, pi));
}

// ---------------------------------------------------------------------
// One-player views
// ---------------------------------------------------------------------

SupportPomdp p2_view(const Game &g, const StrategyTransducer &sigma) {
    assert(g.is_target_absorbing());
    SupportPomdp v;
    v.num_actions = g.num_a2();
    v.num_classes = g.num_obs2_classes();
    std::map<std::pair<int, int>, int> id;
    std::deque<int> work;
    auto node = [&](int q, int m1) {
        auto key = std::make_pair(q, m1);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int w = (int)v.obs.size();
        id[key] = w;
        v.obs.push_back(g.obs2[q]);
        v.state_of.push_back(q);
        v.target.push_back(contains(g.target, q));
        v.succ.emplace_back(v.num_actions);
        work.push_back(w);
        return w;
    };
    for (auto &[q, p] : g.init.entries) v.init.push_back(node(q, sigma.initial));
    std::sort(v.init.begin(), v.init.end());
    while (!work.empty()) {
        int w = work.front();
        work.pop_front();
        int q = -1, m1 = -1;
        for (auto &[key, val] : id)
            if (val == w) { q = key.first; m1 = key.second; }
        for (int b = 0; b < v.num_actions; b++) {
            std::set<int> ss;
            for (int a : row_action_support(sigma, m1, g.obs1[q]))
                for (auto &[r, pr] : g.delta[q][a][b].entries)
                    ss.insert(node(r, sigma.update[m1][g.obs1[r]]));
            v.succ[w][b].assign(ss.begin(), ss.end());
        }
    }
    return v;
}

SupportPomdp p1_view(const Game &g, const StrategyTransducer &pi) {
    assert(g.is_target_absorbing());
    SupportPomdp v;
    v.num_actions = g.num_a1();
    v.num_classes = g.num_obs1_classes();
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> work;
    auto node = [&](int q, int m2) {
        auto key = std::make_pair(q, m2);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int w = (int)v.obs.size();
        id[key] = w;
        v.obs.push_back(g.obs1[q]);
        v.state_of.push_back(q);
        v.target.push_back(contains(g.target, q));
        v.succ.emplace_back(v.num_actions);
        work.push_back({q, m2});
        return w;
    };
    for (auto &[q, p] : g.init.entries) v.init.push_back(node(q, pi.initial));
    std::sort(v.init.begin(), v.init.end());
    while (!work.empty()) {
        auto [q, m2] = work.front();
        work.pop_front();
        int w = id[{q, m2}];
        for (int a = 0; a < v.num_actions; a++) {
            std::set<int> ss;
            for (int b : row_action_support(pi, m2, g.obs2[q]))
                for (auto &[r, pr] : g.delta[q][a][b].entries)
                    ss.insert(node(r, pi.update[m2][g.obs2[r]]));
            v.succ[w][a].assign(ss.begin(), ss.end());
        }
    }
    return v;
}

// ---------------------------------------------------------------------
// Belief-support machinery
// ---------------------------------------------------------------------

namespace {

using Support = std::vector<int>;  // sorted node ids, nonempty

// Full observation split of Post(B, act): one support per observation
// class hit, target nodes kept.
std::vector<Support> full_splits(const SupportPomdp &v, const Support &B, int act) {
    std::map<int, Support> by_class;
    std::set<int> post;
    for (int u : B)
        for (int w : v.succ[u][act]) post.insert(w);
    for (int w : post) by_class[v.obs[w]].push_back(w);
    std::vector<Support> out;
    for (auto &[cls, sup] : by_class) out.push_back(sup);
    return out;
}

bool hits_target(const SupportPomdp &v, const Support &B) {
    for (int u : B)
        if (v.target[u]) return true;
    return false;
}

Support strip_target(const SupportPomdp &v, const Support &B) {
    Support out;
    for (int u : B)
        if (!v.target[u]) out.push_back(u);
    return out;
}

// Closure of the seeds under splits of *clean* actions (actions whose
// full one-step image avoids the target entirely), then the greatest
// fixpoint: a support survives iff some clean action keeps every split
// surviving. Supports beyond the budget are left unexpanded and count as
// not surviving, which keeps positive answers sound.
struct SafetyFamily {
    std::map<Support, int> id;
    std::vector<Support> supports;
    // edges[s] = per clean action: list of child ids
    std::vector<std::vector<std::pair<int, std::vector<int>>>> edges;
    std::vector<uint8_t> expanded, alive;
    bool truncated = false;

    int chosen_action(int s) const {
        for (auto &[act, kids] : edges[s]) {
            bool ok = true;
            for (int k : kids)
                if (!alive[k]) ok = false;
            if (ok) return act;
        }
        return -1;
    }
};

SafetyFamily safety_family(const SupportPomdp &v, const std::vector<Support> &seeds,
                           long budget) {
    SafetyFamily F;
    std::deque<int> work;
    auto intern = [&](const Support &B) {
        auto it = F.id.find(B);
        if (it != F.id.end()) return it->second;
        int s = (int)F.supports.size();
        F.id[B] = s;
        F.supports.push_back(B);
        F.edges.emplace_back();
        F.expanded.push_back(0);
        F.alive.push_back(0);
        work.push_back(s);
        return s;
    };
    for (auto &B : seeds)
        if (!B.empty()) intern(B);
    while (!work.empty()) {
        int s = work.front();
        work.pop_front();
        if ((long)F.supports.size() > budget) { F.truncated = true; break; }
        const Support B = F.supports[s];
        if (hits_target(v, B)) { F.expanded[s] = 1; continue; }  // dead, no moves
        for (int act = 0; act < v.num_actions; act++) {
            auto splits = full_splits(v, B, act);
            bool clean = true;
            for (auto &S : splits)
                if (hits_target(v, S)) clean = false;
            if (!clean) continue;
            std::vector<int> kids;
            for (auto &S : splits) kids.push_back(intern(S));
            F.edges[s].push_back({act, kids});
        }
        F.expanded[s] = 1;
    }
    // gfp: alive iff expanded, target-free, and some clean action keeps
    // all children alive.
    for (size_t s = 0; s < F.supports.size(); s++)
        F.alive[s] = F.expanded[s] && !hits_target(v, F.supports[s]) &&
                     !F.edges[s].empty();
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t s = 0; s < F.supports.size(); s++) {
            if (!F.alive[s]) continue;
            if (F.chosen_action((int)s) < 0) {
                F.alive[s] = 0;
                changed = true;
            }
        }
    }
    return F;
}

}  // namespace

Tri pomdp_almost_sure_safety(const SupportPomdp &v, const std::vector<int> &support,
                             long budget) {
    Support B = support;
    std::sort(B.begin(), B.end());
    if (B.empty()) return Tri::yes;
    if (hits_target(v, B)) return Tri::no;
    SafetyFamily F = safety_family(v, {B}, budget);
    int s = F.id.at(B);
    if (F.alive[s]) return Tri::yes;
    return F.truncated ? Tri::unknown : Tri::no;
}

// ---------------------------------------------------------------------
// Controller reachability fixpoints
// ---------------------------------------------------------------------

namespace {

// Universe of supports reachable from the initial support when target
// nodes are absorbed away; per (support, action) the split outcomes.
struct ReachUniverse {
    std::map<Support, int> id;
    std::vector<Support> supports;
    // branch: (hit-target?, child id or -1 when everything was absorbed)
    struct Branch {
        bool hit;
        int child;
    };
    std::vector<std::vector<std::vector<Branch>>> moves;  // [s][action]
    std::vector<uint8_t> expanded;
    bool truncated = false;
    int start = -1;  // -1: initial support was entirely target
};

ReachUniverse reach_universe(const SupportPomdp &v, long budget) {
    ReachUniverse U;
    std::deque<int> work;
    auto intern = [&](const Support &B) {
        auto it = U.id.find(B);
        if (it != U.id.end()) return it->second;
        int s = (int)U.supports.size();
        U.id[B] = s;
        U.supports.push_back(B);
        U.moves.emplace_back();
        U.expanded.push_back(0);
        work.push_back(s);
        return s;
    };
    Support b0 = strip_target(v, v.init);
    if (b0.empty()) return U;
    U.start = intern(b0);
    while (!work.empty()) {
        int s = work.front();
        work.pop_front();
        if ((long)U.supports.size() > budget) { U.truncated = true; break; }
        const Support B = U.supports[s];
        U.moves[s].assign(v.num_actions, {});
        for (int act = 0; act < v.num_actions; act++) {
            for (auto &S : full_splits(v, B, act)) {
                ReachUniverse::Branch br;
                br.hit = hits_target(v, S);
                Support rest = strip_target(v, S);
                br.child = rest.empty() ? -1 : intern(rest);
                U.moves[s][act].push_back(br);
            }
        }
        U.expanded[s] = 1;
    }
    return U;
}

}  // namespace

Tri pomdp_positive_reach(const SupportPomdp &v, long budget) {
    for (int u : v.init)
        if (v.target[u]) return Tri::yes;
    ReachUniverse U = reach_universe(v, budget);
    if (U.start < 0) return Tri::yes;
    int n = (int)U.supports.size();
    std::vector<uint8_t> pos(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < n; s++) {
            if (pos[s] || !U.expanded[s]) continue;
            bool ok = false;
            for (int act = 0; act < v.num_actions && !ok; act++)
                for (auto &br : U.moves[s][act])
                    if (br.hit || (br.child >= 0 && pos[br.child])) { ok = true; break; }
            if (ok) { pos[s] = 1; changed = true; }
        }
    }
    if (pos[U.start]) return Tri::yes;
    return U.truncated ? Tri::unknown : Tri::no;
}

Tri pomdp_almost_sure_reach(const SupportPomdp &v, long budget) {
    bool all_target = true;
    for (int u : v.init) all_target &= v.target[u] != 0;
    if (all_target) return Tri::yes;
    ReachUniverse U = reach_universe(v, budget);
    if (U.start < 0) return Tri::yes;
    int n = (int)U.supports.size();
    // Greatest fixpoint with progress: keep supports from which some
    // action stays inside the set on every split and positive progress
    // toward the target is possible inside the set.
    std::vector<uint8_t> W(n);
    for (int s = 0; s < n; s++) W[s] = U.expanded[s];
    while (true) {
        // Progress least fixpoint inside W: some action keeps all
        // branches in W (or absorbed) and one branch hits or progresses.
        std::vector<uint8_t> prog(n, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int s = 0; s < n; s++) {
                if (!W[s] || prog[s]) continue;
                bool ok = false;
                for (int act = 0; act < v.num_actions && !ok; act++) {
                    bool safe = true, gain = false;
                    for (auto &br : U.moves[s][act]) {
                        if (br.child >= 0 && !W[br.child]) safe = false;
                        if (br.hit || (br.child >= 0 && prog[br.child])) gain = true;
                    }
                    if (safe && gain) ok = true;
                }
                if (ok) { prog[s] = 1; changed = true; }
            }
        }
        bool shrunk = false;
        for (int s = 0; s < n; s++)
            if (W[s] && !prog[s]) { W[s] = 0; shrunk = true; }
        if (!shrunk) break;
    }
    if (W[U.start]) return Tri::yes;
    return U.truncated ? Tri::unknown : Tri::no;
}

// ---------------------------------------------------------------------
// Witness verification
// ---------------------------------------------------------------------

namespace {

// Strategy for player 2 that follows a safety family from a starting
// support: memory = family supports (plus a sink memory); the action at a
// support is its surviving clean action; updates follow the observed
// class into the matching split.
StrategyTransducer family_strategy(const Game &g, const SupportPomdp &v,
                                   const SafetyFamily &F, const Support &start) {
    // Collect alive supports reachable from start along chosen actions.
    std::vector<int> order;
    std::map<int, int> mem_of;
    std::deque<int> work;
    int s0 = F.id.at(start);
    mem_of[s0] = 0;
    order.push_back(s0);
    work.push_back(s0);
    while (!work.empty()) {
        int s = work.front();
        work.pop_front();
        int act = F.chosen_action(s);
        if (act < 0) continue;
        for (auto &[a, kids] : F.edges[s]) {
            if (a != act) continue;
            for (int k : kids)
                if (!mem_of.count(k)) {
                    mem_of[k] = (int)order.size();
                    order.push_back(k);
                    work.push_back(k);
                }
        }
    }
    int M = (int)order.size() + 1;  // + sink
    int sink = M - 1;
    StrategyTransducer t = StrategyTransducer::pure(2, M, g.num_obs2_classes());
    for (int m = 0; m < M; m++)
        for (int o = 0; o < t.num_classes; o++) {
            t.update[m][o] = sink;
            t.action[m][o] = 0;
        }
    for (int i = 0; i < (int)order.size(); i++) {
        int s = order[i];
        int act = F.chosen_action(s);
        if (act < 0) act = 0;
        for (int o = 0; o < t.num_classes; o++) t.action[i][o] = act;
        for (auto &[a, kids] : F.edges[s]) {
            if (a != act) continue;
            for (int k : kids) {
                // The split's class is the class of its nodes.
                int cls = v.obs[F.supports[k][0]];
                if (mem_of.count(k)) t.update[i][cls] = mem_of[k];
            }
        }
    }
    t.initial = 0;
    return t;
}

}  // namespace

VerifyResult verify_witness(const Game &g_in, const StrategyTransducer &sigma,
                            Mode mode, long budget) {
    VerifyResult res;
    Game g = normalize(g_in);
    auto errs = sigma.validate_against(g);
    if (!errs.empty() || sigma.player != 1) {
        res.status = VerifyStatus::inconclusive;
        res.note = "strategy rejected: " + (errs.empty() ? "wrong player" : errs[0]);
        return res;
    }
    SupportPomdp v = p2_view(g, sigma);
    Support init = v.init;
    bool init_has_target = hits_target(v, init);
    Support init_clean = strip_target(v, init);

    if (mode == Mode::positive) {
        if (init_has_target) {
            res.status = VerifyStatus::verified;
            res.note = "initial distribution already meets the target";
            return res;
        }
        SafetyFamily F = safety_family(v, {init}, budget);
        int s = F.id.at(init);
        if (F.alive[s]) {
            StrategyTransducer pi = family_strategy(g, v, F, init);
            ProductChain chain = product_chain(g, sigma, pi);
            if (!chain_qualitative_reach(chain).positive) {
                res.status = VerifyStatus::refuted;
                res.note = "player 2 keeps the play away from the target with "
                           "probability one";
                res.counter = pi;
            } else {
                res.status = VerifyStatus::inconclusive;
                res.note = "internal: counter-strategy failed its own check";
            }
            return res;
        }
        if (F.truncated) {
            res.status = VerifyStatus::inconclusive;
            res.note = "support budget exhausted";
            return res;
        }
        res.status = VerifyStatus::verified;
        res.note = "no player-2 strategy avoids the target almost-surely";
        return res;
    }

    // Almost-sure: player 2 refutes iff it can avoid with positive
    // probability, iff some support reachable in the avoid dynamics
    // contains a node from which player 2 alone is almost-surely safe.
    if (init_clean.empty()) {
        res.status = VerifyStatus::verified;
        res.note = "initial distribution is inside the target";
        return res;
    }
    // Nodes from which player 2 is almost-surely safe on its own.
    std::vector<Support> singles;
    for (int u = 0; u < (int)v.obs.size(); u++)
        if (!v.target[u]) singles.push_back({u});
    SafetyFamily FS = safety_family(v, singles, budget);
    std::set<int> safe_nodes;
    for (auto &B : singles)
        if (FS.alive[FS.id.at(B)]) safe_nodes.insert(B[0]);

    // BFS over the avoid dynamics: all actions, full splits, target mass
    // dropped. Track predecessors so a refuting prefix can be rebuilt.
    std::map<Support, int> seen;
    std::vector<Support> sup;
    std::vector<std::tuple<int, int, int>> pred;  // (parent, action, class)
    std::deque<int> work;
    auto intern = [&](const Support &B, int par, int act, int cls) {
        auto it = seen.find(B);
        if (it != seen.end()) return it->second;
        int s = (int)sup.size();
        seen[B] = s;
        sup.push_back(B);
        pred.push_back({par, act, cls});
        work.push_back(s);
        return s;
    };
    intern(init_clean, -1, -1, -1);
    bool truncated = FS.truncated;
    int found = -1, found_node = -1;
    while (!work.empty() && found < 0) {
        int s = work.front();
        work.pop_front();
        if ((long)sup.size() > budget) { truncated = true; break; }
        for (int u : sup[s])
            if (safe_nodes.count(u)) { found = s; found_node = u; break; }
        if (found >= 0) break;
        for (int act = 0; act < v.num_actions; act++)
            for (auto &S : full_splits(v, sup[s], act)) {
                Support rest = strip_target(v, S);
                if (!rest.empty()) intern(rest, s, act, v.obs[S[0]]);
            }
    }
    if (found >= 0) {
        // Prefix of fixed actions reaching the support, then the
        // single-node safety strategy; observation mismatches fall into
        // the family strategy's sink.
        std::vector<std::pair<int, int>> path;  // (action, class)
        for (int s = found; std::get<0>(pred[s]) >= 0; s = std::get<0>(pred[s]))
            path.push_back({std::get<1>(pred[s]), std::get<2>(pred[s])});
        std::reverse(path.begin(), path.end());
        StrategyTransducer tail = family_strategy(g, v, FS, {found_node});
        int P = (int)path.size();
        StrategyTransducer pi = StrategyTransducer::pure(2, P + tail.memory,
                                                         tail.num_classes);
        int dead = P + (tail.memory > 1 ? tail.memory - 1 : 0);  // tail sink
        for (int i = 0; i < P; i++)
            for (int o = 0; o < pi.num_classes; o++) {
                pi.action[i][o] = path[i].first;
                pi.update[i][o] = dead;
            }
        for (int i = 0; i < P; i++) {
            int nxt = (i + 1 < P) ? i + 1 : P;  // P = tail memory 0
            pi.update[i][path[i].second] = nxt;
        }
        for (int m = 0; m < tail.memory; m++)
            for (int o = 0; o < pi.num_classes; o++) {
                pi.action[P + m][o] = tail.action[m][o];
                pi.update[P + m][o] = P + tail.update[m][o];
            }
        pi.initial = P > 0 ? 0 : P;
        ProductChain chain = product_chain(g, sigma, pi);
        if (chain_positive_avoid(chain)) {
            res.status = VerifyStatus::refuted;
            res.note = "player 2 avoids the target with positive probability";
            res.counter = pi;
        } else {
            res.status = VerifyStatus::inconclusive;
            res.note = "internal: counter-strategy failed its own check";
        }
        return res;
    }
    if (truncated) {
        res.status = VerifyStatus::inconclusive;
        res.note = "support budget exhausted";
        return res;
    }
    res.status = VerifyStatus::verified;
    res.note = "no player-2 strategy retains positive avoidance probability";
    return res;
}

// ---------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------

namespace {

struct Enumerator {
    const Game &g;
    int player, M;
    long budget;
    const std::function<bool(const StrategyTransducer &)> &cb;
    int O, A;
    std::vector<int> upd, act;  // M*O, -1 = unassigned
    int used = 1;
    long calls = 0;
    bool stop = false, out_of_budget = false;

    Enumerator(const Game &gg, int pl, int mem, long bud,
               const std::function<bool(const StrategyTransducer &)> &c)
        : g(gg), player(pl), M(mem), budget(bud), cb(c) {
        O = player == 1 ? g.num_obs1_classes() : g.num_obs2_classes();
        A = player == 1 ? g.num_a1() : g.num_a2();
        upd.assign(M * O, -1);
        act.assign(M * O, -1);
    }

    int obs(int q) const { return player == 1 ? g.obs1[q] : g.obs2[q]; }

    StateSet succ_states(int q, int chosen) const {
        StateSet out = 0;
        if (player == 1) {
            for (int b = 0; b < g.num_a2(); b++)
                out |= g.delta[q][chosen][b].support();
        } else {
            for (int a = 0; a < g.num_a1(); a++)
                out |= g.delta[q][a][chosen].support();
        }
        return out;
    }

    void emit() {
        if (used != M) return;  // covered by the smaller-memory pass
        StrategyTransducer t = StrategyTransducer::pure(player, M, O);
        for (int m = 0; m < M; m++)
            for (int o = 0; o < O; o++) {
                int e = m * O + o;
                t.update[m][o] = upd[e] >= 0 ? upd[e] : m;
                t.action[m][o] = act[e] >= 0 ? act[e] : 0;
            }
        if (cb(t)) stop = true;
    }

    // pending: product nodes (q, mem) to process; visited: flat bitmap.
    void go(std::deque<std::pair<int, int>> pending, std::vector<uint8_t> visited) {
        if (stop) return;
        if (++calls > budget) { out_of_budget = true; return; }
        while (!pending.empty()) {
            auto [q, mem] = pending.front();
            int e = mem * O + obs(q);
            if (act[e] < 0) {
                for (int a = 0; a < A && !stop; a++) {
                    act[e] = a;
                    go(pending, visited);
                    act[e] = -1;
                    if (out_of_budget) return;
                }
                return;
            }
            StateSet qs = succ_states(q, act[e]);
            for (int r : bits(qs)) {
                int e2 = mem * O + obs(r);
                if (upd[e2] < 0) {
                    int hi = used < M ? used : M - 1;
                    for (int t = 0; t <= hi && !stop; t++) {
                        upd[e2] = t;
                        int saved = used;
                        if (t == used) used++;
                        go(pending, visited);
                        used = saved;
                        upd[e2] = -1;
                        if (out_of_budget) return;
                    }
                    return;
                }
            }
            pending.pop_front();
            for (int r : bits(qs)) {
                int m2 = upd[mem * O + obs(r)];
                int key = r * M + m2;
                if (!visited[key]) {
                    visited[key] = 1;
                    pending.push_back({r, m2});
                }
            }
        }
        emit();
    }
};

}  // namespace

bool enumerate_pure_strategies(const Game &g, int player, int memory,
                               long leaf_budget,
                               const std::function<bool(const StrategyTransducer &)> &cb) {
    Enumerator en(g, player, memory, leaf_budget, cb);
    std::deque<std::pair<int, int>> pending;
    std::vector<uint8_t> visited(g.num_states() * memory, 0);
    for (auto &[q, p] : g.init.entries) {
        pending.push_back({q, 0});
        visited[q * memory + 0] = 1;
    }
    en.go(pending, visited);
    return !en.out_of_budget;
}

// ---------------------------------------------------------------------
// Brute force decision
// ---------------------------------------------------------------------

OracleOutcome brute_force_decide(const Game &g_in, Mode mode,
                                 const OracleOptions &opt) {
    OracleOutcome out;
    Game g = normalize(g_in);
    std::ostringstream note;

    // Fast refutation filter: all memoryless pure player-2 strategies.
    std::vector<StrategyTransducer> filters;
    enumerate_pure_strategies(g, 2, 1, 100000,
                              [&](const StrategyTransducer &pi) {
                                  filters.push_back(pi);
                                  return false;
                              });

    bool all_exhaustive = true;
    for (int m = 1; m <= opt.p1_mem_max && out.verdict == Verdict::unknown; m++) {
        bool conclusive = true;
        bool complete = enumerate_pure_strategies(
            g, 1, m, opt.leaf_budget, [&](const StrategyTransducer &sigma) {
                for (auto &pi : filters) {
                    ChainQual q = chain_qualitative_reach(product_chain(g, sigma, pi));
                    bool beaten = mode == Mode::almost_sure ? !q.almost_sure : !q.positive;
                    if (beaten) return false;  // refuted cheaply
                }
                VerifyResult vr = verify_witness(g, sigma, mode, opt.support_budget);
                if (vr.status == VerifyStatus::verified) {
                    out.verdict = Verdict::win;
                    out.witness = sigma;
                    out.found_memory = m;
                    return true;
                }
                if (vr.status == VerifyStatus::inconclusive) conclusive = false;
                return false;
            });
        if (out.verdict == Verdict::win) break;
        if (complete && conclusive) {
            out.refuted_up_to = m;
        } else {
            all_exhaustive = false;
            out.truncated = true;
        }
    }
    if (out.verdict == Verdict::win) {
        note << "witness found at memory " << out.found_memory;
        out.note = note.str();
        return out;
    }

    // Lose certification: one player-2 strategy defeating every player-1
    // strategy of any memory, decided on player 1's view of the fixed
    // game by belief-support fixpoints.
    for (int m = 1; m <= opt.p2_mem_max && out.verdict == Verdict::unknown; m++) {
        bool complete = enumerate_pure_strategies(
            g, 2, m, opt.leaf_budget, [&](const StrategyTransducer &pi) {
                SupportPomdp v = p1_view(g, pi);
                Tri t = mode == Mode::almost_sure
                            ? pomdp_almost_sure_reach(v, opt.support_budget)
                            : pomdp_positive_reach(v, opt.support_budget);
                if (t == Tri::no) {
                    out.verdict = Verdict::lose;
                    out.refuter = pi;
                    return true;
                }
                return false;
            });
        if (!complete) out.truncated = true;
        if (out.verdict == Verdict::lose) {
            note << "refuted by a player-2 strategy with memory " << m;
            if (out.refuted_up_to > 0)
                note << "; player-1 memories up to " << out.refuted_up_to
                     << " exhausted";
            out.note = note.str();
            return out;
        }
    }

    note << "undecided: no witness up to memory " << opt.p1_mem_max;
    if (out.refuted_up_to > 0)
        note << " (exhaustive up to " << out.refuted_up_to << ")";
    note << ", no uniform refuter up to memory " << opt.p2_mem_max;
    if (!all_exhaustive || out.truncated) note << "; budgets were hit";
    out.truncated = out.truncated || !all_exhaustive;
    out.note = note.str();
    return out;
}

}  // namespace posg
