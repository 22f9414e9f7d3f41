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

#include "posg/transducer.hpp"

#include <fstream>
#include <sstream>

namespace posg {

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::win: return "win";
        case Verdict::lose: return "lose";
        default: return "unknown-within-bound";
    }
}

StrategyTransducer StrategyTransducer::pure(int player, int memory, int classes) {
    StrategyTransducer t;
    t.player = player;
    t.memory = memory;
    t.num_classes = classes;
    t.update.assign(memory, std::vector<int>(classes, 0));
    t.action.assign(memory, std::vector<int>(classes, 0));
    t.action_dist.assign(memory, std::vector<std::vector<Rat>>(classes));
    return t;
}

bool StrategyTransducer::randomized() const {
    for (int m = 0; m < memory; m++)
        for (int o = 0; o < num_classes; o++)
            if (action[m][o] < 0) return true;
    return false;
}

std::vector<std::string> StrategyTransducer::validate_against(const Game &g) const {
    std::vector<std::string> errs;
    if (player != 1 && player != 2) errs.push_back("player must be 1 or 2");
    int classes = player == 1 ? g.num_obs1_classes() : g.num_obs2_classes();
    int nact = player == 1 ? g.num_a1() : g.num_a2();
    if (num_classes != classes)
        errs.push_back("strategy expects " + std::to_string(num_classes) +
                       " observation classes, game has " + std::to_string(classes));
    if (memory <= 0) errs.push_back("memory must be positive");
    if (initial < 0 || initial >= memory) errs.push_back("initial memory out of range");
    if ((int)update.size() != memory || (int)action.size() != memory ||
        (int)action_dist.size() != memory) {
        errs.push_back("tables do not cover all memory states");
        return errs;
    }
    for (int m = 0; m < memory; m++) {
        if ((int)update[m].size() != num_classes || (int)action[m].size() != num_classes ||
            (int)action_dist[m].size() != num_classes) {
            errs.push_back("tables for memory " + std::to_string(m) +
                           " do not cover all observation classes");
            continue;
        }
        for (int o = 0; o < num_classes; o++) {
            if (update[m][o] < 0 || update[m][o] >= memory)
                errs.push_back("update(" + std::to_string(m) + ", " + std::to_string(o) +
                               ") out of range");
            if (action[m][o] >= nact)
                errs.push_back("action(" + std::to_string(m) + ", " + std::to_string(o) +
                               ") out of range");
            if (action[m][o] < 0) {
                const auto &d = action_dist[m][o];
                if ((int)d.size() != nact) {
                    errs.push_back("randomized row (" + std::to_string(m) + ", " +
                                   std::to_string(o) + ") has wrong arity");
                } else {
                    Rat sum(0);
                    for (auto &p : d) {
                        if (p < 0) errs.push_back("negative probability in randomized row");
                        sum += p;
                    }
                    if (sum != 1)
                        errs.push_back("randomized row (" + std::to_string(m) + ", " +
                                       std::to_string(o) + ") sums to " + sum.get_str());
                }
            }
        }
    }
    return errs;
}

std::string serialize_strategy(const StrategyTransducer &t, const Game &g) {
    const auto &acts = t.player == 1 ? g.actions1 : g.actions2;
    std::ostringstream os;
    os << "strategy\nplayer " << t.player << "\nclasses " << t.num_classes
       << "\nmemory " << t.memory << "\ninitial " << t.initial << "\n";
    for (int m = 0; m < t.memory; m++)
        for (int o = 0; o < t.num_classes; o++)
            os << "update " << m << " " << o << " -> " << t.update[m][o] << "\n";
    for (int m = 0; m < t.memory; m++)
        for (int o = 0; o < t.num_classes; o++) {
            os << "next " << m << " " << o << " -> ";
            if (t.action[m][o] >= 0) {
                os << acts[t.action[m][o]] << "\n";
            } else {
                os << "{";
                bool first = true;
                for (int a = 0; a < (int)acts.size(); a++) {
                    if (t.action_dist[m][o][a] == 0) continue;
                    os << (first ? " " : ", ") << acts[a] << ": "
                       << t.action_dist[m][o][a].get_str();
                    first = false;
                }
                os << " }\n";
            }
        }
    return os.str();
}

void write_strategy_file(const StrategyTransducer &t, const Game &g,
                         const std::string &path) {
    std::ofstream out(path);
    out << serialize_strategy(t, g);
}

StratParseResult parse_strategy(const std::string &text, const Game &g) {
    StratParseResult res;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    StrategyTransducer t;
    bool got_header = false, got_player = false, got_classes = false,
         got_memory = false, got_initial = false;
    std::vector<std::vector<bool>> upd_seen, nxt_seen;
    auto fail = [&](const std::string &m) {
        res.errors.push_back("line " + std::to_string(lineno) + ": " + m);
    };
    auto ensure_tables = [&]() {
        if (!got_player || !got_classes || !got_memory) return false;
        if (upd_seen.empty()) {
            int nact = t.player == 1 ? (int)g.actions1.size() : (int)g.actions2.size();
            t.update.assign(t.memory, std::vector<int>(t.num_classes, -1));
            t.action.assign(t.memory, std::vector<int>(t.num_classes, -1));
            t.action_dist.assign(t.memory,
                                 std::vector<std::vector<Rat>>(t.num_classes));
            (void)nact;
            upd_seen.assign(t.memory, std::vector<bool>(t.num_classes, false));
            nxt_seen.assign(t.memory, std::vector<bool>(t.num_classes, false));
        }
        return true;
    };
    while (std::getline(in, line)) {
        lineno++;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "strategy") { got_header = true; continue; }
        if (word == "player") { ls >> t.player; got_player = true; continue; }
        if (word == "classes") { ls >> t.num_classes; got_classes = true; continue; }
        if (word == "memory") { ls >> t.memory; got_memory = true; continue; }
        if (word == "initial") { ls >> t.initial; got_initial = true; continue; }
        if (word == "update" || word == "next") {
            if (!ensure_tables()) { fail("header lines must precede tables"); break; }
            int m, o;
            std::string arrow;
            if (!(ls >> m >> o >> arrow) || arrow != "->") { fail("malformed row"); continue; }
            if (m < 0 || m >= t.memory || o < 0 || o >= t.num_classes) {
                fail("row index out of range");
                continue;
            }
            if (word == "update") {
                int m2;
                if (!(ls >> m2) || m2 < 0 || m2 >= t.memory) { fail("bad update target"); continue; }
                t.update[m][o] = m2;
                upd_seen[m][o] = true;
            } else {
                std::string rest;
                std::getline(ls, rest);
                // trim
                size_t b = rest.find_first_not_of(" \t");
                if (b == std::string::npos) { fail("missing action"); continue; }
                rest = rest.substr(b);
                size_t e = rest.find_last_not_of(" \t");
                rest = rest.substr(0, e + 1);
                const auto &acts = t.player == 1 ? g.actions1 : g.actions2;
                if (!rest.empty() && rest[0] == '{') {
                    std::vector<Rat> dist(acts.size(), Rat(0));
                    std::string body = rest.substr(1, rest.size() >= 2 && rest.back() == '}'
                                                          ? rest.size() - 2
                                                          : std::string::npos);
                    std::istringstream bs(body);
                    std::string item;
                    bool bad = false;
                    while (std::getline(bs, item, ',')) {
                        size_t c = item.find(':');
                        if (c == std::string::npos) { bad = true; break; }
                        std::string an = item.substr(0, c), pv = item.substr(c + 1);
                        auto strip = [](std::string s) {
                            size_t x = s.find_first_not_of(" \t");
                            if (x == std::string::npos) return std::string();
                            size_t y = s.find_last_not_of(" \t");
                            return s.substr(x, y - x + 1);
                        };
                        an = strip(an); pv = strip(pv);
                        int ai = -1;
                        for (int i = 0; i < (int)acts.size(); i++)
                            if (acts[i] == an) ai = i;
                        if (ai < 0) { bad = true; break; }
                        try {
                            Rat r(pv);
                            r.canonicalize();
                            dist[ai] = r;
                        } catch (...) { bad = true; break; }
                    }
                    if (bad) { fail("malformed randomized action row"); continue; }
                    t.action[m][o] = -1;
                    t.action_dist[m][o] = dist;
                } else {
                    int ai = -1;
                    for (int i = 0; i < (int)acts.size(); i++)
                        if (acts[i] == rest) ai = i;
                    if (ai < 0) { fail("unknown action '" + rest + "'"); continue; }
                    t.action[m][o] = ai;
                }
                nxt_seen[m][o] = true;
            }
            continue;
        }
        fail("unknown keyword '" + word + "'");
    }
    if (!got_header) res.errors.push_back("missing 'strategy' header");
    if (!got_player || !got_classes || !got_memory || !got_initial)
        res.errors.push_back("missing player/classes/memory/initial line");
    if (res.errors.empty()) {
        for (int m = 0; m < t.memory; m++)
            for (int o = 0; o < t.num_classes; o++) {
                if (!upd_seen[m][o])
                    res.errors.push_back("missing update row for (" + std::to_string(m) +
                                         ", " + std::to_string(o) + ")");
                if (!nxt_seen[m][o])
                    res.errors.push_back("missing next row for (" + std::to_string(m) +
                                         ", " + std::to_string(o) + ")");
            }
    }
    if (res.errors.empty()) {
        for (auto &e : t.validate_against(g)) res.errors.push_back(e);
    }
    if (res.errors.empty()) res.strat = std::move(t);
    return res;
}

StratParseResult parse_strategy_file(const std::string &path, const Game &g) {
    std::ifstream in(path);
    if (!in) {
        StratParseResult r;
        r.errors.push_back("cannot open '" + path + "'");
        return r;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_strategy(ss.str(), g);
}

}  // namespace posg
