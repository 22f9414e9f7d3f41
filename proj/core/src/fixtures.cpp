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

#include "posg/fixtures.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

namespace posg {

namespace {

// Small builder: states and actions registered by name, transitions by
// name with rational weights.
struct B {
    Game g;
    std::map<std::string, int> sid;

    int st(const std::string &n) {
        auto it = sid.find(n);
        if (it != sid.end()) return it->second;
        int id = (int)g.state_names.size();
        g.state_names.push_back(n);
        sid[n] = id;
        return id;
    }
    void acts(std::vector<std::string> a1, std::vector<std::string> a2) {
        g.actions1 = std::move(a1);
        g.actions2 = std::move(a2);
    }
    void finish_states() {
        g.delta.assign(g.state_names.size(),
                       std::vector<std::vector<Dist>>(
                           g.actions1.size(), std::vector<Dist>(g.actions2.size())));
    }
    void tr(const std::string &q, int a, int b,
            std::vector<std::pair<std::string, Rat>> d) {
        Dist dd;
        for (auto &[r, p] : d) dd.push(st(r), p);
        g.delta[st(q)][a][b] = dd;
    }
    // Convenience: same distribution for every action pair in the sets.
    void tr_all(const std::string &q, const std::vector<int> &as,
                const std::vector<int> &bs,
                std::vector<std::pair<std::string, Rat>> d) {
        for (int a : as)
            for (int b : bs) tr(q, a, b, d);
    }
    std::vector<int> all1() const {
        std::vector<int> v;
        for (int i = 0; i < (int)g.actions1.size(); i++) v.push_back(i);
        return v;
    }
    std::vector<int> all2() const {
        std::vector<int> v;
        for (int i = 0; i < (int)g.actions2.size(); i++) v.push_back(i);
        return v;
    }
    void obs1_classes(std::vector<std::vector<std::string>> cls) {
        g.obs1.assign(g.state_names.size(), -1);
        for (int c = 0; c < (int)cls.size(); c++)
            for (auto &n : cls[c]) g.obs1[st(n)] = c;
    }
    void obs2_classes(std::vector<std::vector<std::string>> cls) {
        g.obs2.assign(g.state_names.size(), -1);
        for (int c = 0; c < (int)cls.size(); c++)
            for (auto &n : cls[c]) g.obs2[st(n)] = c;
    }
    void obs1_perfect() {
        g.obs1.resize(g.state_names.size());
        for (int q = 0; q < (int)g.state_names.size(); q++) g.obs1[q] = q;
    }
    void obs2_perfect() {
        g.obs2.resize(g.state_names.size());
        for (int q = 0; q < (int)g.state_names.size(); q++) g.obs2[q] = q;
    }
    void obs2_blind() { g.obs2.assign(g.state_names.size(), 0); }
    void init(const std::string &q) { g.init = dirac(st(q)); }
    void target(std::vector<std::string> qs) {
        for (auto &q : qs) g.target |= bit(st(q));
    }
};

const Rat H(1, 2);  // one half

Game fig1() {
    B b;
    b.st("q0"); b.st("q1"); b.st("q2"); b.st("smiley");
    b.acts({"a", "b"}, {"a", "b"});
    b.finish_states();
    // Player 2 routes the first move; afterwards player 1 must play the
    // action matching the branch to get a coin flip toward the target,
    // while the other action loops. Player 1 cannot see the branch.
    b.tr_all("q0", b.all1(), {0}, {{"q1", 1}});
    b.tr_all("q0", b.all1(), {1}, {{"q2", 1}});
    b.tr_all("q1", {0}, b.all2(), {{"smiley", H}, {"q1", H}});
    b.tr_all("q1", {1}, b.all2(), {{"q1", 1}});
    b.tr_all("q2", {0}, b.all2(), {{"q2", 1}});
    b.tr_all("q2", {1}, b.all2(), {{"smiley", H}, {"q2", H}});
    b.tr_all("smiley", b.all1(), b.all2(), {{"smiley", 1}});
    b.obs1_classes({{"q0", "q1", "q2"}, {"smiley"}});
    b.obs2_perfect();
    b.init("q0");
    b.target({"smiley"});
    return b.g;
}

Game fig3() {
    B b;
    for (auto n : {"q0", "q1", "q2", "q3", "q4", "q5", "smiley"}) b.st(n);
    b.acts({"a", "b"}, {"a", "b"});
    b.finish_states();
    b.tr_all("q0", b.all1(), {0}, {{"q1", H}, {"q2", H}});
    b.tr_all("q0", b.all1(), {1}, {{"q2", H}, {"q3", H}});
    b.tr_all("q1", b.all1(), b.all2(), {{"q4", 1}});
    b.tr_all("q2", {0}, b.all2(), {{"q4", 1}});
    b.tr_all("q2", {1}, b.all2(), {{"q5", 1}});
    b.tr_all("q3", b.all1(), b.all2(), {{"q5", 1}});
    b.tr_all("q4", b.all1(), {0}, {{"smiley", 1}});
    b.tr_all("q4", b.all1(), {1}, {{"q0", 1}});
    b.tr_all("q5", b.all1(), {0}, {{"q0", 1}});
    b.tr_all("q5", b.all1(), {1}, {{"smiley", 1}});
    b.tr_all("smiley", b.all1(), b.all2(), {{"smiley", 1}});
    b.obs1_perfect();
    b.obs2_blind();
    b.init("q0");
    b.target({"smiley"});
    return b.g;
}

Game ladder(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("l<n> needs 1 <= n <= 8");
    B b;
    b.st("qI"); b.st("L"); b.st("R");
    for (int k = n; k >= 0; k--) b.st("q" + std::to_string(k));
    b.acts({"a", "b"}, {"a", "b"});
    b.finish_states();
    auto qn = "q" + std::to_string(n);
    b.tr_all("qI", b.all1(), b.all2(), {{"L", H}, {"R", H}});
    for (auto s : {"L", "R"}) {
        b.tr_all(s, {0}, b.all2(), {{"qI", 1}});   // a: double again
        b.tr_all(s, {1}, b.all2(), {{qn, 1}});     // b: advance to the column
    }
    // Column: a matched action pair climbs back to the top, a mismatch
    // descends one rung; the top rung loops on a match.
    for (int k = n; k >= 1; k--) {
        auto qk = "q" + std::to_string(k);
        auto down = "q" + std::to_string(k - 1);
        for (int a : {0, 1})
            for (int bb : {0, 1}) {
                if (a == bb)
                    b.tr(qk, a, bb, {{qn, 1}});
                else
                    b.tr(qk, a, bb, {{down, 1}});
            }
    }
    b.tr_all("q0", b.all1(), b.all2(), {{"q0", 1}});
    b.obs1_perfect();
    b.obs2_blind();
    b.init("qI");
    b.target({"q0"});
    return b.g;
}

Game fig9() {
    B b;
    for (auto n : {"init", "q1", "q2", "q3", "q4", "smiley"}) b.st(n);
    b.acts({"a", "b"}, {"a", "b"});
    b.finish_states();
    b.tr_all("init", b.all1(), b.all2(), {{"q1", H}, {"q2", H}});
    b.tr_all("q1", {1}, b.all2(), {{"q1", H}, {"q2", H}});
    b.tr_all("q1", {0}, b.all2(), {{"q3", 1}});
    b.tr_all("q2", {1}, b.all2(), {{"q1", H}, {"q2", H}});
    b.tr_all("q2", {0}, b.all2(), {{"q4", 1}});
    b.tr_all("q3", b.all1(), {0}, {{"q1", 1}});
    b.tr_all("q3", b.all1(), {1}, {{"q1", H}, {"smiley", H}});
    b.tr_all("q4", b.all1(), {0}, {{"q2", H}, {"smiley", H}});
    b.tr_all("q4", b.all1(), {1}, {{"q2", 1}});
    b.tr_all("smiley", b.all1(), b.all2(), {{"smiley", 1}});
    b.obs1_perfect();
    b.obs2_blind();
    b.init("init");
    b.target({"smiley"});
    return b.g;
}

// Separator-staged family. Player 1 actions a, b and the separator
// "sharp"; player 2 actions are the first n letters. One line per letter:
// (n-i) idle cells, a doubling cell, (i-1) merged halving cells, then a
// split halving cell whose mismatch exit pays out only if player 2 plays
// letter i. Any separator move not drawn resets to the initial state, as
// does a mismatch at the doubling cell's commitment state. Player 2
// observes only the initial state, the number of separators played, and
// the target.
Game gadget_family(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("g<n> needs 1 <= n <= 4");
    B b;
    b.st("qI");
    auto idle = [&](int i, int k) { return "i" + std::to_string(i) + "_" + std::to_string(k); };
    auto mdiv = [&](int i, int j) { return "d" + std::to_string(i) + "_" + std::to_string(j); };
    for (int i = 1; i <= n; i++) {
        for (int k = 1; k <= n - i; k++) b.st(idle(i, k));
        b.st("L" + std::to_string(i));
        b.st("R" + std::to_string(i));
        b.st("m" + std::to_string(i));
        b.st("h" + std::to_string(i));
        for (int j = 1; j <= i - 1; j++) b.st(mdiv(i, j));
        b.st("e" + std::to_string(i));
        b.st("f" + std::to_string(i));
    }
    b.st("smiley");
    std::vector<std::string> a2;
    for (int i = 0; i < n; i++) a2.push_back(std::string(1, (char)('a' + i)));
    b.acts({"a", "b", "sharp"}, a2);
    b.finish_states();
    const int A = 0, Bq = 1, S = 2;  // player-1 action ids
    auto letters = [&](int i) {      // player-2 ids for letters a,b (when present)
        (void)i;
        std::vector<int> v;
        for (int x = 0; x < std::min(2, n); x++) v.push_back(x);
        return v;
    };
    (void)letters;

    // Entry distribution of line i (after its idles).
    auto inc_entry = [&](int i) -> std::vector<std::pair<std::string, Rat>> {
        return {{"L" + std::to_string(i), H}, {"R" + std::to_string(i), H}};
    };
    auto line_entry = [&](int i) -> std::vector<std::pair<std::string, Rat>> {
        if (n - i >= 1) return {{idle(i, 1), Rat(1)}};
        return inc_entry(i);
    };

    {  // qI: uniform over line entries, all action pairs
        std::vector<std::pair<std::string, Rat>> d;
        for (int i = 1; i <= n; i++)
            for (auto &[s, p] : line_entry(i)) d.push_back({s, p * Rat(1, n)});
        b.tr_all("qI", b.all1(), b.all2(), d);
    }
    for (int i = 1; i <= n; i++) {
        std::string Li = "L" + std::to_string(i), Ri = "R" + std::to_string(i),
                    mi = "m" + std::to_string(i), hi = "h" + std::to_string(i),
                    ei = "e" + std::to_string(i), fi = "f" + std::to_string(i);
        for (int k = 1; k <= n - i; k++) {
            auto next = (k < n - i) ? std::vector<std::pair<std::string, Rat>>{{idle(i, k + 1), Rat(1)}}
                                    : inc_entry(i);
            b.tr_all(idle(i, k), {A, Bq}, b.all2(), {{idle(i, k), 1}});
            b.tr_all(idle(i, k), {S}, b.all2(), next);
        }
        for (auto &s : {Li, Ri}) {
            b.tr_all(s, {A, Bq}, b.all2(), {{mi, 1}});
            b.tr_all(s, {S}, b.all2(), {{"qI", 1}});
        }
        // Commitment cell: matched letters double back, a mismatch moves
        // to the hold cell, separator resets.
        for (int x : {A, Bq})
            for (int y = 0; y < n; y++) {
                if (x == y)
                    b.tr(mi, x, y, inc_entry(i));
                else
                    b.tr(mi, x, y, {{hi, 1}});
            }
        b.tr_all(mi, {S}, b.all2(), {{"qI", 1}});
        b.tr_all(hi, {A, Bq}, b.all2(), {{hi, 1}});
        {
            auto next = (i >= 2) ? mdiv(i, 1) : ei;
            b.tr_all(hi, {S}, b.all2(), {{next, 1}});
        }
        for (int j = 1; j <= i - 1; j++) {
            for (int x : {A, Bq})
                for (int y = 0; y < n; y++) {
                    if (x == y)
                        b.tr(mdiv(i, j), x, y, {{"qI", 1}});
                    else
                        b.tr(mdiv(i, j), x, y, {{mdiv(i, j), 1}});
                }
            auto next = (j < i - 1) ? mdiv(i, j + 1) : ei;
            b.tr_all(mdiv(i, j), {S}, b.all2(), {{next, 1}});
        }
        for (int x : {A, Bq})
            for (int y = 0; y < n; y++) {
                if (x == y)
                    b.tr(ei, x, y, {{"qI", 1}});
                else
                    b.tr(ei, x, y, {{fi, 1}});
            }
        b.tr_all(ei, {S}, b.all2(), {{"qI", 1}});
        for (int x = 0; x < 3; x++)
            for (int y = 0; y < n; y++) {
                if (y == i - 1)
                    b.tr(fi, x, y, {{"smiley", 1}});
                else
                    b.tr(fi, x, y, {{"qI", 1}});
            }
    }
    b.tr_all("smiley", b.all1(), b.all2(), {{"qI", 1}});

    b.obs1_perfect();
    // Player-2 classes: qI, separator stages 0..n, smiley.
    std::vector<std::vector<std::string>> cls(n + 3);
    cls[0] = {"qI"};
    auto stage_of = [&](int i, const std::string &tag, int k) -> int {
        // idle k: stage k-1; L/R/m/h: stage n-i; mdiv j: stage n-i+j; e/f: n.
        if (tag == "idle") return k - 1;
        if (tag == "core") return n - i;
        if (tag == "mdiv") return n - i + k;
        return n;
    };
    for (int i = 1; i <= n; i++) {
        for (int k = 1; k <= n - i; k++)
            cls[1 + stage_of(i, "idle", k)].push_back(idle(i, k));
        for (auto tag : {"L", "R", "m", "h"})
            cls[1 + stage_of(i, "core", 0)].push_back(tag + std::to_string(i));
        for (int j = 1; j <= i - 1; j++)
            cls[1 + stage_of(i, "mdiv", j)].push_back(mdiv(i, j));
        cls[1 + n].push_back("e" + std::to_string(i));
        cls[1 + n].push_back("f" + std::to_string(i));
    }
    cls[n + 2] = {"smiley"};
    b.obs2_classes(cls);
    b.init("qI");
    b.target({"smiley"});
    return b.g;
}

// Action-commitment expansion of fig1, written out explicitly: each
// original state q gets commitment states (q,a) and (q,b); the first half
// of a round moves to the commitment, the second half either replays the
// committed action (following the original transition) or falls into an
// absorbing sink.
Game fig10() {
    Game base = fig1();
    B b;
    for (auto &n : base.state_names) b.st(n);
    for (auto &n : base.state_names)
        for (auto &a : base.actions1) b.st(n + "," + a);
    b.st("sink");
    b.acts({"a", "b"}, {"a", "b"});
    b.finish_states();
    for (int q = 0; q < base.num_states(); q++) {
        const std::string &qn = base.state_names[q];
        for (int a = 0; a < 2; a++)
            for (int bb = 0; bb < 2; bb++)
                b.tr(qn, a, bb, {{qn + "," + base.actions1[a], 1}});
        for (int a = 0; a < 2; a++) {
            std::string cn = qn + "," + base.actions1[a];
            for (int a2 = 0; a2 < 2; a2++)
                for (int bb = 0; bb < 2; bb++) {
                    if (a2 == a) {
                        std::vector<std::pair<std::string, Rat>> d;
                        for (auto &[r, p] : base.delta[q][a][bb].entries)
                            d.push_back({base.state_names[r], p});
                        b.tr(cn, a2, bb, d);
                    } else {
                        b.tr(cn, a2, bb, {{"sink", 1}});
                    }
                }
        }
    }
    b.tr_all("sink", b.all1(), b.all2(), {{"sink", 1}});
    // Observations are inherited: a commitment state is indistinguishable
    // from its base state; the sink is its own class for both players.
    b.obs1_classes({{"q0", "q1", "q2", "q0,a", "q0,b", "q1,a", "q1,b", "q2,a", "q2,b"},
                    {"smiley", "smiley,a", "smiley,b"},
                    {"sink"}});
    std::vector<std::vector<std::string>> o2;
    for (auto n : {"q0", "q1", "q2", "smiley"})
        o2.push_back({n, std::string(n) + ",a", std::string(n) + ",b"});
    o2.push_back({"sink"});
    b.obs2_classes(o2);
    b.init("q0");
    b.target({"smiley"});
    return b.g;
}

}  // namespace

bool is_game_fixture(const std::string &name) {
    if (name == "fig1" || name == "fig3" || name == "fig9" || name == "fig10")
        return true;
    if (name.size() >= 2 && (name[0] == 'l' || name[0] == 'g')) {
        for (size_t i = 1; i < name.size(); i++)
            if (!isdigit((unsigned char)name[i])) return false;
        return true;
    }
    return false;
}

Game build_fixture(const std::string &name, int n) {
    if (name == "fig1") return fig1();
    if (name == "fig3") return fig3();
    if (name == "fig9") return fig9();
    if (name == "fig10") return fig10();
    auto tail_n = [&](size_t from) {
        int v = n;
        if (name.size() > from) v = std::stoi(name.substr(from));
        return v;
    };
    if (!name.empty() && name[0] == 'l' && is_game_fixture(name))
        return ladder(tail_n(1));
    if (!name.empty() && name[0] == 'g' && is_game_fixture(name))
        return gadget_family(tail_n(1));
    if (!name.empty() && name[0] == 'c')
        throw std::invalid_argument(
            "'" + name + "' is a counter system, not a game; see counter_system.hpp "
            "(CLI: `example " + name + "`)");
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace posg
