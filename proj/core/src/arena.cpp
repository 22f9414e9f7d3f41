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

#include "posg/arena.hpp"

#include <deque>

namespace posg {

int ArenaGame::add_vertex(int own, std::string name) {
    owner.push_back(own);
    out.emplace_back();
    names.push_back(std::move(name));
    return (int)owner.size() - 1;
}

void ArenaGame::add_edge(int from, int label, int to) {
    out[from].push_back({label, to});
}

std::vector<std::string> ArenaGame::validate() const {
    std::vector<std::string> errs;
    for (int v = 0; v < num_vertices(); v++) {
        if (owner[v] != 0 && owner[v] != 1)
            errs.push_back("vertex " + std::to_string(v) + " has invalid owner");
        if (out[v].empty())
            errs.push_back("vertex " + std::to_string(v) +
                           (names[v].empty() ? "" : " (" + names[v] + ")") +
                           " has no outgoing edge");
        for (auto &e : out[v])
            if (e.to < 0 || e.to >= num_vertices())
                errs.push_back("vertex " + std::to_string(v) + " has a dangling edge");
    }
    return errs;
}

int count_set(const VertexSet &s) {
    int n = 0;
    for (uint8_t b : s) n += b != 0;
    return n;
}

Attractor attractor(const ArenaGame &g, const VertexSet &goal, int player,
                    const VertexSet *within) {
    int n = g.num_vertices();
    Attractor A;
    A.set.assign(n, 0);
    A.rank.assign(n, -1);
    A.strat.choice.assign(n, -1);
    auto inside = [&](int v) { return !within || in_set(*within, v); };

    // Reverse edges and out-degree counters restricted to the subgame.
    std::vector<std::vector<int>> rev(n);
    std::vector<int> degree(n, 0);
    for (int v = 0; v < n; v++) {
        if (!inside(v)) continue;
        for (auto &e : g.out[v]) {
            if (!inside(e.to)) continue;
            rev[e.to].push_back(v);
            degree[v]++;
        }
    }

    std::deque<int> queue;
    for (int v = 0; v < n; v++)
        if (inside(v) && in_set(goal, v)) {
            A.set[v] = 1;
            A.rank[v] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : rev[u]) {
            if (A.set[v]) continue;
            if (g.owner[v] == player) {
                A.set[v] = 1;
                A.rank[v] = A.rank[u] + 1;
                queue.push_back(v);
            } else {
                if (--degree[v] == 0) {
                    A.set[v] = 1;
                    // Rank of a forced vertex: one past its worst successor;
                    // using the last-confirming successor's rank keeps the
                    // ranks a valid progress measure.
                    A.rank[v] = A.rank[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    // Least-edge strategy: first edge that decreases the rank (or hits the
    // goal) while staying in the subgame.
    for (int v = 0; v < n; v++) {
        if (!A.set[v] || g.owner[v] != player) continue;
        if (A.rank[v] == 0) continue;  // strategy at goal set by callers if needed
        for (int i = 0; i < (int)g.out[v].size(); i++) {
            int w = g.out[v][i].to;
            if (!inside(w)) continue;
            if (A.set[w] && A.rank[w] < A.rank[v]) {
                A.strat.choice[v] = i;
                break;
            }
        }
    }
    return A;
}

namespace {

VertexSet complement(const VertexSet &s, const VertexSet *within = nullptr) {
    VertexSet out(s.size());
    for (size_t i = 0; i < s.size(); i++)
        out[i] = (!s[i] && (!within || (*within)[i])) ? 1 : 0;
    return out;
}

// Least edge of v staying inside `set`.
int least_edge_into(const ArenaGame &g, int v, const VertexSet &set) {
    for (int i = 0; i < (int)g.out[v].size(); i++)
        if (in_set(set, g.out[v][i].to)) return i;
    return -1;
}

}  // namespace

ArenaSolution solve_reach(const ArenaGame &g, const VertexSet &goal) {
    ArenaSolution sol;
    Attractor A = attractor(g, goal, 0);
    sol.win1 = A.set;
    sol.strat1 = A.strat;
    // Inside the goal the objective is already met; give player 1 a
    // defined move anyway (least edge) so the strategy is total on win1.
    for (int v = 0; v < g.num_vertices(); v++)
        if (A.set[v] && g.owner[v] == 0 && sol.strat1.choice[v] < 0)
            sol.strat1.choice[v] = 0;
    // Player 2 keeps the play outside the attractor forever.
    VertexSet lose = complement(A.set);
    sol.strat2.choice.assign(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); v++)
        if (lose[v] && g.owner[v] == 1)
            sol.strat2.choice[v] = least_edge_into(g, v, lose);
    return sol;
}

ArenaSolution solve_safety(const ArenaGame &g, const VertexSet &safe) {
    // Player 1 keeps the play in `safe` iff player 2 cannot reach its
    // complement.
    ArenaSolution sol;
    Attractor bad = attractor(g, complement(safe), 1);
    sol.win1 = complement(bad.set);
    sol.strat1.choice.assign(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); v++)
        if (sol.win1[v] && g.owner[v] == 0)
            sol.strat1.choice[v] = least_edge_into(g, v, sol.win1);
    sol.strat2 = bad.strat;
    for (int v = 0; v < g.num_vertices(); v++)
        if (bad.set[v] && g.owner[v] == 1 && sol.strat2.choice[v] < 0)
            sol.strat2.choice[v] = 0;  // already outside `safe`
    return sol;
}

ArenaSolution solve_buchi(const ArenaGame &g, const VertexSet &goal) {
    int n = g.num_vertices();
    ArenaSolution sol;
    sol.strat2.choice.assign(n, -1);
    VertexSet cur(n, 1);
    // Peel regions from which player 2 forces the play away from the goal
    // for good. What remains is player 1's repeated-reachability region.
    while (true) {
        VertexSet goal_cur(n, 0);
        for (int v = 0; v < n; v++) goal_cur[v] = cur[v] && in_set(goal, v);
        Attractor A = attractor(g, goal_cur, 0, &cur);
        VertexSet escape(n, 0);
        bool any = false;
        for (int v = 0; v < n; v++)
            if (cur[v] && !A.set[v]) { escape[v] = 1; any = true; }
        if (!any) break;
        Attractor D = attractor(g, escape, 1, &cur);
        // Player 2: inside the escape region, stay out of the goal
        // attractor forever; on the way there, follow the attractor.
        for (int v = 0; v < n; v++) {
            if (!D.set[v] || g.owner[v] != 1) continue;
            if (escape[v]) {
                // Stay within escape's safety region: any edge back into
                // the set player 1 cannot attract from.
                int e = least_edge_into(g, v, escape);
                sol.strat2.choice[v] = e >= 0 ? e : D.strat.choice[v];
            } else {
                sol.strat2.choice[v] = D.strat.choice[v];
            }
            if (sol.strat2.choice[v] < 0) sol.strat2.choice[v] = 0;
        }
        for (int v = 0; v < n; v++)
            if (D.set[v]) cur[v] = 0;
    }
    sol.win1 = cur;
    // Recurrence strategy inside the final region: march to the goal, and
    // from the goal take the least edge that stays in the region.
    VertexSet goal_fin(n, 0);
    for (int v = 0; v < n; v++) goal_fin[v] = cur[v] && in_set(goal, v);
    Attractor A = attractor(g, goal_fin, 0, &cur);
    sol.strat1 = A.strat;
    for (int v = 0; v < n; v++) {
        if (!cur[v] || g.owner[v] != 0) continue;
        if (goal_fin[v] || sol.strat1.choice[v] < 0) {
            int e = least_edge_into(g, v, cur);
            if (e >= 0) sol.strat1.choice[v] = e;
        }
    }
    return sol;
}

VertexSet solve_cobuchi_p2(const ArenaGame &g, const VertexSet &goal) {
    int n = g.num_vertices();
    VertexSet cur(n, 1), win2(n, 0);
    while (true) {
        // Region where player 2 can avoid the goal forever within cur.
        VertexSet avoid_ok(n, 0);
        for (int v = 0; v < n; v++) avoid_ok[v] = cur[v] && !in_set(goal, v);
        // gfp: player 2 existential, player 1 universal.
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < n; v++) {
                if (!avoid_ok[v]) continue;
                bool ok;
                if (g.owner[v] == 1) {
                    ok = false;
                    for (auto &e : g.out[v])
                        if (cur[e.to] && avoid_ok[e.to]) ok = true;
                } else {
                    ok = true;
                    for (auto &e : g.out[v])
                        if (!(cur[e.to] && avoid_ok[e.to])) ok = false;
                }
                if (!ok) { avoid_ok[v] = 0; changed = true; }
            }
        }
        bool any = false;
        for (int v = 0; v < n; v++) any |= avoid_ok[v] != 0;
        if (!any) break;
        Attractor D = attractor(g, avoid_ok, 1, &cur);
        for (int v = 0; v < n; v++)
            if (D.set[v]) { win2[v] = 1; cur[v] = 0; }
    }
    return win2;
}

bool verify_arena_strategy(const ArenaGame &g, Objective obj,
                           const VertexSet &goal, int player,
                           const MemorylessStrategy &strat,
                           const VertexSet &from) {
    int n = g.num_vertices();
    // Successors once `player`'s choices are fixed.
    auto succs = [&](int v) {
        std::vector<int> out;
        if (g.owner[v] == player) {
            int c = strat.choice[v];
            if (c < 0 || c >= (int)g.out[v].size()) return out;  // undefined: fails
            out.push_back(g.out[v][c].to);
        } else {
            for (auto &e : g.out[v]) out.push_back(e.to);
        }
        return out;
    };
    // Reachable set from `from` in the fixed graph.
    VertexSet reach(n, 0);
    std::deque<int> q;
    for (int v = 0; v < n; v++)
        if (in_set(from, v)) { reach[v] = 1; q.push_back(v); }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (obj == Objective::reach && in_set(goal, v)) continue;  // absorbed
        auto ss = succs(v);
        if (ss.empty()) return false;  // strategy undefined on a reachable vertex
        for (int w : ss)
            if (!reach[w]) { reach[w] = 1; q.push_back(w); }
    }
    if (obj == Objective::safety) {
        for (int v = 0; v < n; v++)
            if (reach[v] && !in_set(goal, v)) return false;
        return true;
    }
    if (obj == Objective::cobuchi) {
        // Fails iff some reachable goal vertex lies on a cycle of the
        // fixed graph (the opponent then loops through it forever).
        for (int v = 0; v < n; v++) {
            if (!reach[v] || !in_set(goal, v)) continue;
            VertexSet seen(n, 0);
            std::deque<int> qq;
            for (int w : succs(v)) {
                if (!seen[w]) { seen[w] = 1; qq.push_back(w); }
            }
            while (!qq.empty()) {
                int u = qq.front();
                qq.pop_front();
                if (u == v) return false;
                for (int w : succs(u))
                    if (!seen[w]) { seen[w] = 1; qq.push_back(w); }
            }
        }
        return true;
    }
    // Vertices from which the opponent can avoid `goal` forever in the
    // fixed graph: gfp of "not goal and some successor still avoids".
    VertexSet avoid(n, 0);
    for (int v = 0; v < n; v++) avoid[v] = !in_set(goal, v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; v++) {
            if (!avoid[v]) continue;
            bool ok = false;
            for (int w : succs(v))
                if (avoid[w]) ok = true;
            if (succs(v).empty()) ok = false;
            if (!ok) { avoid[v] = 0; changed = true; }
        }
    }
    if (obj == Objective::reach) {
        for (int v = 0; v < n; v++)
            if (in_set(from, v) && avoid[v]) return false;
        return true;
    }
    // buchi: no reachable vertex may allow avoiding the goal forever.
    for (int v = 0; v < n; v++)
        if (reach[v] && avoid[v]) return false;
    return true;
}

}  // namespace posg
