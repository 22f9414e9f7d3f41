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

#include "posg/game.hpp"

#include <algorithm>
#include <set>

namespace posg {

void Dist::push(int q, const Rat &p) {
    if (p == 0) return;
    auto it = std::lower_bound(entries.begin(), entries.end(), q,
                               [](const auto &e, int v) { return e.first < v; });
    if (it != entries.end() && it->first == q)
        it->second += p;
    else
        entries.insert(it, {q, p});
}

Dist dirac(int q) {
    Dist d;
    d.entries.push_back({q, Rat(1)});
    return d;
}

Dist uniform(const std::vector<int> &qs) {
    Dist d;
    Rat p(1, (long)qs.size());
    for (int q : qs) d.push(q, p);
    return d;
}

int Game::state_id(const std::string &name) const {
    for (int i = 0; i < (int)state_names.size(); i++)
        if (state_names[i] == name) return i;
    return -1;
}
int Game::action1_id(const std::string &name) const {
    for (int i = 0; i < (int)actions1.size(); i++)
        if (actions1[i] == name) return i;
    return -1;
}
int Game::action2_id(const std::string &name) const {
    for (int i = 0; i < (int)actions2.size(); i++)
        if (actions2[i] == name) return i;
    return -1;
}

static int num_classes(const std::vector<int> &obs) {
    int m = -1;
    for (int c : obs) m = std::max(m, c);
    return m + 1;
}
int Game::num_obs1_classes() const { return num_classes(obs1); }
int Game::num_obs2_classes() const { return num_classes(obs2); }

static StateSet class_of(const std::vector<int> &obs, int id) {
    StateSet s = 0;
    for (int q = 0; q < (int)obs.size(); q++)
        if (obs[q] == id) s |= bit(q);
    return s;
}
StateSet Game::obs1_class(int id) const { return class_of(obs1, id); }
StateSet Game::obs2_class(int id) const { return class_of(obs2, id); }

static std::vector<StateSet> classes_of(const std::vector<int> &obs) {
    std::vector<StateSet> out(num_classes(obs), 0);
    for (int q = 0; q < (int)obs.size(); q++) out[obs[q]] |= bit(q);
    return out;
}
std::vector<StateSet> Game::obs1_classes() const { return classes_of(obs1); }
std::vector<StateSet> Game::obs2_classes() const { return classes_of(obs2); }

static bool all_singletons(const std::vector<int> &obs) {
    std::set<int> seen;
    for (int c : obs)
        if (!seen.insert(c).second) return false;
    return true;
}
bool Game::p1_perfect() const { return all_singletons(obs1); }
bool Game::p2_perfect() const { return all_singletons(obs2); }
bool Game::p1_blind() const { return num_obs1_classes() <= 1; }
bool Game::p2_blind() const { return num_obs2_classes() <= 1; }

bool Game::is_target_absorbing() const {
    for (int q : bits(target))
        for (int a = 0; a < num_a1(); a++)
            for (int b = 0; b < num_a2(); b++) {
                const Dist &d = delta[q][a][b];
                if (!(d.is_dirac() && d.entries[0].first == q)) return false;
            }
    return true;
}

SideInfo classify(const Game &g) {
    return {g.p1_perfect(), g.p2_perfect(), g.p1_blind(), g.p2_blind()};
}

std::vector<std::string> validate(const Game &g) {
    std::vector<std::string> errs;
    int n = g.num_states();
    if (n == 0) { errs.push_back("game has no states"); return errs; }
    if (n > kMaxStates)
        errs.push_back("too many states (" + std::to_string(n) + " > 64)");
    if (g.actions1.empty()) errs.push_back("player 1 has no actions");
    if (g.actions2.empty()) errs.push_back("player 2 has no actions");
    if (!errs.empty()) return errs;

    auto dup = [&](const std::vector<std::string> &v, const char *what) {
        std::set<std::string> seen;
        for (auto &s : v)
            if (!seen.insert(s).second)
                errs.push_back(std::string("duplicate ") + what + " '" + s + "'");
    };
    dup(g.state_names, "state");
    dup(g.actions1, "player-1 action");
    dup(g.actions2, "player-2 action");

    if (g.init.entries.empty()) errs.push_back("initial distribution is empty");
    Rat isum(0);
    for (auto &[q, p] : g.init.entries) {
        if (q < 0 || q >= n) errs.push_back("initial distribution mentions an unknown state");
        if (p <= 0) errs.push_back("initial distribution has a non-positive probability");
        isum += p;
    }
    if (!g.init.entries.empty() && isum != 1)
        errs.push_back("initial distribution sums to " + isum.get_str() + ", not 1");

    if ((int)g.delta.size() != n)
        errs.push_back("delta table has wrong number of states");
    for (int q = 0; q < n && q < (int)g.delta.size(); q++) {
        if ((int)g.delta[q].size() != g.num_a1()) {
            errs.push_back("delta rows for state '" + g.state_names[q] +
                           "' do not cover all player-1 actions");
            continue;
        }
        for (int a = 0; a < g.num_a1(); a++) {
            if ((int)g.delta[q][a].size() != g.num_a2()) {
                errs.push_back("delta entry for ('" + g.state_names[q] + "', '" +
                               g.actions1[a] + "') does not cover all player-2 actions");
                continue;
            }
            for (int b = 0; b < g.num_a2(); b++) {
                const Dist &d = g.delta[q][a][b];
                if (d.entries.empty()) {
                    errs.push_back("missing transition for ('" + g.state_names[q] +
                                   "', '" + g.actions1[a] + "', '" + g.actions2[b] + "')");
                    continue;
                }
                Rat sum(0);
                int last = -1;
                for (auto &[r, p] : d.entries) {
                    if (r < 0 || r >= n)
                        errs.push_back("transition from '" + g.state_names[q] +
                                       "' targets an unknown state");
                    if (r <= last)
                        errs.push_back("transition entries for '" + g.state_names[q] +
                                       "' are not sorted/unique");
                    last = r;
                    if (p <= 0)
                        errs.push_back("non-positive probability in transition from '" +
                                       g.state_names[q] + "'");
                    sum += p;
                }
                if (sum != 1)
                    errs.push_back("transition for ('" + g.state_names[q] + "', '" +
                                   g.actions1[a] + "', '" + g.actions2[b] +
                                   "') sums to " + sum.get_str() + ", not 1");
            }
        }
    }

    auto check_partition = [&](const std::vector<int> &obs, const char *who) {
        if ((int)obs.size() != n) {
            errs.push_back(std::string(who) + " observation map does not cover all states");
            return;
        }
        int m = num_classes(obs);
        std::vector<bool> used(m, false);
        for (int q = 0; q < n; q++) {
            if (obs[q] < 0) {
                errs.push_back("state '" + g.state_names[q] + "' missing from " + who +
                               " observation partition");
                return;
            }
            used[obs[q]] = true;
        }
        for (int c = 0; c < m; c++)
            if (!used[c])
                errs.push_back(std::string(who) + " observation class " +
                               std::to_string(c) + " is empty");
    };
    check_partition(g.obs1, "player-1");
    check_partition(g.obs2, "player-2");

    if (g.target == 0) errs.push_back("target set is empty");
    if ((g.target & ~g.all_states()) != 0)
        errs.push_back("target set mentions unknown states");
    if (g.safe) {
        if ((*g.safe & ~g.all_states()) != 0)
            errs.push_back("safe set mentions unknown states");
        if ((g.target & ~*g.safe) != 0)
            errs.push_back("target set is not contained in the safe set");
    }
    return errs;
}

StateSet post_set(const Game &g, StateSet s, int a, int b) {
    StateSet out = 0;
    for (int q : bits(s)) out |= g.delta[q][a][b].support();
    return out;
}

StateSet post_any(const Game &g, StateSet s, int a) {
    StateSet out = 0;
    for (int b = 0; b < g.num_a2(); b++) out |= post_set(g, s, a, b);
    return out;
}

Game normalize(const Game &g) {
    Game h = g;
    if (!h.init.is_dirac()) {
        int qn = h.num_states();
        h.state_names.push_back("@init");
        h.obs1.push_back(h.num_obs1_classes());
        h.obs2.push_back(h.num_obs2_classes());
        std::vector<std::vector<Dist>> row(
            h.num_a1(), std::vector<Dist>(h.num_a2(), h.init));
        h.delta.push_back(row);
        h.init = dirac(qn);
        if (h.safe) *h.safe |= bit(qn);
    }
    for (int q : bits(h.target))
        for (auto &arow : h.delta[q])
            for (auto &d : arow) d = dirac(q);
    return h;
}

Game buchi_to_reach(const Game &g) {
    Game h = g;
    int qt = h.num_states();
    h.state_names.push_back("@goal");
    h.obs1.push_back(h.num_obs1_classes());
    h.obs2.push_back(h.num_obs2_classes());
    // Fresh absorbing goal.
    std::vector<std::vector<Dist>> row(
        h.num_a1(), std::vector<Dist>(h.num_a2(), dirac(qt)));
    h.delta.push_back(row);
    // Every visit to an original target state escapes to the goal with
    // probability one half; the other half follows the original move,
    // rescaled. A play visits the original targets infinitely often with
    // probability one (resp. positive) iff the goal is reached with
    // probability one (resp. positive) here.
    for (int q : bits(g.target))
        for (int a = 0; a < h.num_a1(); a++)
            for (int b = 0; b < h.num_a2(); b++) {
                Dist nd;
                nd.push(qt, Rat(1, 2));
                for (auto &[r, p] : g.delta[q][a][b].entries)
                    nd.push(r, p * Rat(1, 2));
                h.delta[q][a][b] = nd;
            }
    h.target = bit(qt);
    if (h.safe) *h.safe |= bit(qt);
    return h;
}

}  // namespace posg
