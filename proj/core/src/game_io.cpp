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

#include "posg/game_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace posg {

std::string ParseError::render(const std::string &filename) const {
    std::ostringstream os;
    os << filename;
    if (line > 0) {
        os << ":" << line;
        if (col > 0) os << ":" << col;
    }
    os << ": " << message;
    return os.str();
}

namespace {

struct Token {
    std::string text;
    int line, col;
};

// Splits into words, braces, commas, colons and arrows; '#' starts a
// comment to end of line.
std::vector<Token> tokenize(const std::string &text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') { line++; col = 1; } else col++;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') { advance(text[i]); i++; }
            continue;
        }
        if (isspace((unsigned char)c)) { advance(c); i++; continue; }
        int tl = line, tc = col;
        if (c == '{' || c == '}' || c == ',' || c == ':') {
            out.push_back({std::string(1, c), tl, tc});
            advance(c); i++;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({"->", tl, tc});
            advance(c); i++; advance(text[i]); i++;
            continue;
        }
        std::string w;
        while (i < text.size()) {
            char d = text[i];
            if (isspace((unsigned char)d) || d == '{' || d == '}' || d == ',' ||
                d == ':' || d == '#')
                break;
            if (d == '-' && i + 1 < text.size() && text[i + 1] == '>') break;
            w += d;
            advance(d); i++;
        }
        out.push_back({w, tl, tc});
    }
    return out;
}

const char *kSections[] = {"states", "init", "actions1", "actions2",
                           "obs1",   "obs2", "target",   "safe",
                           "delta"};
bool is_section(const std::string &w) {
    for (auto *s : kSections)
        if (w == s) return true;
    return false;
}

struct Parser {
    std::vector<Token> toks;
    size_t pos = 0;
    std::vector<ParseError> errs;

    bool done() const { return pos >= toks.size(); }
    const Token &peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }
    void err(const Token &t, const std::string &m) { errs.push_back({t.line, t.col, m}); }
    void err_here(const std::string &m) {
        if (done()) {
            int l = toks.empty() ? 0 : toks.back().line;
            errs.push_back({l, 0, m + " (unexpected end of input)"});
        } else {
            err(peek(), m);
        }
    }
    bool expect(const std::string &w) {
        if (!done() && peek().text == w) { pos++; return true; }
        err_here("expected '" + w + "'");
        return false;
    }

    // Rational literal: "3" or "3/8".
    std::optional<Rat> rational() {
        if (done()) { err_here("expected a probability"); return std::nullopt; }
        Token t = take();
        const std::string &s = t.text;
        size_t slash = s.find('/');
        auto numeric = [](const std::string &v) {
            if (v.empty()) return false;
            for (char c : v)
                if (!isdigit((unsigned char)c)) return false;
            return true;
        };
        std::string num = slash == std::string::npos ? s : s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!numeric(num) || !numeric(den) || den == "0") {
            err(t, "'" + s + "' is not a rational literal");
            return std::nullopt;
        }
        Rat r(num + "/" + den);
        r.canonicalize();
        return r;
    }
};

}  // namespace

ParseResult parse_game(const std::string &text) {
    Parser p{tokenize(text)};
    ParseResult res;

    // Collect section -> token span, in order of appearance.
    struct Section {
        Token head;
        size_t begin, end;
    };
    std::vector<Section> sections;
    {
        size_t i = 0;
        while (i < p.toks.size()) {
            if (is_section(p.toks[i].text) &&
                (sections.empty() || i > sections.back().begin)) {
                if (!sections.empty()) sections.back().end = i;
                sections.push_back({p.toks[i], i + 1, p.toks.size()});
            } else if (sections.empty()) {
                res.errors.push_back({p.toks[i].line, p.toks[i].col,
                                      "expected a section keyword, got '" +
                                          p.toks[i].text + "'"});
                return res;
            }
            i++;
        }
    }
    std::map<std::string, Section> by_name;
    for (auto &s : sections) {
        if (by_name.count(s.head.text))
            res.errors.push_back({s.head.line, s.head.col,
                                  "duplicate section '" + s.head.text + "'"});
        by_name.emplace(s.head.text, s);
    }
    for (auto *req : {"states", "init", "actions1", "actions2", "obs1", "obs2",
                      "target", "delta"})
        if (!by_name.count(req))
            res.errors.push_back({0, 0, std::string("missing section '") + req + "'"});
    if (!res.errors.empty()) return res;

    Game g;
    auto words_in = [&](const Section &s) {
        std::vector<Token> out;
        for (size_t i = s.begin; i < s.end; i++) out.push_back(p.toks[i]);
        return out;
    };

    for (auto &t : words_in(by_name.at("states"))) g.state_names.push_back(t.text);
    for (auto &t : words_in(by_name.at("actions1"))) g.actions1.push_back(t.text);
    for (auto &t : words_in(by_name.at("actions2"))) g.actions2.push_back(t.text);
    if (g.state_names.empty())
        res.errors.push_back({by_name.at("states").head.line, 0, "no states declared"});
    if ((int)g.state_names.size() > kMaxStates)
        res.errors.push_back({by_name.at("states").head.line, 0,
                              "too many states (limit is 64)"});
    if (!res.errors.empty()) return res;

    auto state_of = [&](const Token &t) {
        int q = g.state_id(t.text);
        if (q < 0) res.errors.push_back({t.line, t.col, "unknown state '" + t.text + "'"});
        return q;
    };

    // init: either a single state or a braced distribution.
    {
        const Section &s = by_name.at("init");
        Parser ip{std::vector<Token>(p.toks.begin() + s.begin, p.toks.begin() + s.end)};
        if (ip.done()) {
            res.errors.push_back({s.head.line, s.head.col, "empty init section"});
        } else if (ip.peek().text == "{") {
            ip.take();
            while (!ip.done() && ip.peek().text != "}") {
                Token st = ip.take();
                int q = state_of(st);
                if (!ip.expect(":")) break;
                auto r = ip.rational();
                if (!r) break;
                if (q >= 0) g.init.push(q, *r);
                if (!ip.done() && ip.peek().text == ",") ip.take();
            }
            ip.expect("}");
        } else {
            Token st = ip.take();
            int q = state_of(st);
            if (q >= 0) g.init = dirac(q);
            if (!ip.done())
                ip.err_here("trailing tokens after initial state");
        }
        for (auto &e : ip.errs) res.errors.push_back(e);
    }

    // Observation partitions: sequence of braced groups.
    auto parse_obs = [&](const char *name, std::vector<int> &obs) {
        const Section &s = by_name.at(name);
        obs.assign(g.state_names.size(), -1);
        Parser op{std::vector<Token>(p.toks.begin() + s.begin, p.toks.begin() + s.end)};
        int cls = 0;
        while (!op.done()) {
            if (!op.expect("{")) break;
            bool any = false;
            while (!op.done() && op.peek().text != "}") {
                Token st = op.take();
                int q = state_of(st);
                if (q >= 0) {
                    if (obs[q] != -1)
                        res.errors.push_back({st.line, st.col,
                                              "state '" + st.text + "' appears in two " +
                                                  name + " classes"});
                    else
                        obs[q] = cls;
                }
                any = true;
            }
            if (!op.expect("}")) break;
            if (!any)
                res.errors.push_back({s.head.line, s.head.col,
                                      std::string("empty class in ") + name});
            cls++;
        }
        for (auto &e : op.errs) res.errors.push_back(e);
        for (int q = 0; q < (int)obs.size(); q++)
            if (obs[q] == -1)
                res.errors.push_back({s.head.line, s.head.col,
                                      "state '" + g.state_names[q] + "' missing from " +
                                          name + " partition"});
    };
    parse_obs("obs1", g.obs1);
    parse_obs("obs2", g.obs2);

    for (auto &t : words_in(by_name.at("target"))) {
        int q = state_of(t);
        if (q >= 0) g.target |= bit(q);
    }
    if (by_name.count("safe")) {
        StateSet s = 0;
        for (auto &t : words_in(by_name.at("safe"))) {
            int q = state_of(t);
            if (q >= 0) s |= bit(q);
        }
        g.safe = s;
    }

    // delta entries: q a b -> { q': p, ... }
    {
        const Section &s = by_name.at("delta");
        g.delta.assign(g.state_names.size(),
                       std::vector<std::vector<Dist>>(
                           g.actions1.size(), std::vector<Dist>(g.actions2.size())));
        std::vector<std::vector<std::vector<Token>>> where(
            g.state_names.size(),
            std::vector<std::vector<Token>>(g.actions1.size(),
                                            std::vector<Token>(g.actions2.size())));
        Parser dp{std::vector<Token>(p.toks.begin() + s.begin, p.toks.begin() + s.end)};
        while (!dp.done()) {
            Token qt = dp.take();
            int q = g.state_id(qt.text);
            if (q < 0) {
                res.errors.push_back({qt.line, qt.col, "unknown state '" + qt.text + "'"});
                break;
            }
            if (dp.done()) { dp.err_here("expected a player-1 action"); break; }
            Token at = dp.take();
            int a = g.action1_id(at.text);
            if (a < 0) {
                res.errors.push_back({at.line, at.col,
                                      "unknown player-1 action '" + at.text + "'"});
                break;
            }
            if (dp.done()) { dp.err_here("expected a player-2 action"); break; }
            Token bt = dp.take();
            int b = g.action2_id(bt.text);
            if (b < 0) {
                res.errors.push_back({bt.line, bt.col,
                                      "unknown player-2 action '" + bt.text + "'"});
                break;
            }
            if (!dp.expect("->")) break;
            if (!dp.expect("{")) break;
            Dist d;
            bool bad = false;
            while (!dp.done() && dp.peek().text != "}") {
                Token st = dp.take();
                int r = g.state_id(st.text);
                if (r < 0) {
                    res.errors.push_back({st.line, st.col,
                                          "unknown state '" + st.text + "'"});
                    bad = true;
                    break;
                }
                if (!dp.expect(":")) { bad = true; break; }
                auto pr = dp.rational();
                if (!pr) { bad = true; break; }
                d.push(r, *pr);
                if (!dp.done() && dp.peek().text == ",") dp.take();
            }
            if (bad) break;
            if (!dp.expect("}")) break;
            if (!where[q][a][b].empty() && where[q][a][b][0].line != 0)
                res.errors.push_back({qt.line, qt.col,
                                      "duplicate transition for ('" + qt.text + "', '" +
                                          at.text + "', '" + bt.text + "')"});
            where[q][a][b] = {qt};
            g.delta[q][a][b] = d;
        }
        for (auto &e : dp.errs) res.errors.push_back(e);
        for (int q = 0; q < g.num_states(); q++)
            for (int a = 0; a < g.num_a1(); a++)
                for (int b = 0; b < g.num_a2(); b++)
                    if (where[q][a][b].empty())
                        res.errors.push_back(
                            {s.head.line, s.head.col,
                             "delta is not total: missing entry for ('" +
                                 g.state_names[q] + "', '" + g.actions1[a] + "', '" +
                                 g.actions2[b] + "')"});
    }

    if (!res.errors.empty()) return res;
    for (auto &m : validate(g)) res.errors.push_back({0, 0, m});
    if (!res.errors.empty()) return res;
    res.game = std::move(g);
    return res;
}

ParseResult parse_game_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult r;
        r.errors.push_back({0, 0, "cannot open '" + path + "'"});
        return r;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_game(ss.str());
}

std::string serialize_game(const Game &g) {
    std::ostringstream os;
    os << "states";
    for (auto &s : g.state_names) os << " " << s;
    os << "\n";
    if (g.init.is_dirac()) {
        os << "init " << g.state_names[g.init.entries[0].first] << "\n";
    } else {
        os << "init {";
        bool first = true;
        for (auto &[q, p] : g.init.entries) {
            os << (first ? " " : ", ") << g.state_names[q] << ": " << p.get_str();
            first = false;
        }
        os << " }\n";
    }
    os << "actions1";
    for (auto &a : g.actions1) os << " " << a;
    os << "\nactions2";
    for (auto &a : g.actions2) os << " " << a;
    os << "\n";
    auto emit_obs = [&](const char *name, const std::vector<StateSet> &classes) {
        os << name;
        for (StateSet c : classes) {
            os << " {";
            for (int q : bits(c)) os << " " << g.state_names[q];
            os << " }";
        }
        os << "\n";
    };
    emit_obs("obs1", g.obs1_classes());
    emit_obs("obs2", g.obs2_classes());
    os << "target";
    for (int q : bits(g.target)) os << " " << g.state_names[q];
    os << "\n";
    if (g.safe) {
        os << "safe";
        for (int q : bits(*g.safe)) os << " " << g.state_names[q];
        os << "\n";
    }
    os << "delta\n";
    for (int q = 0; q < g.num_states(); q++)
        for (int a = 0; a < g.num_a1(); a++)
            for (int b = 0; b < g.num_a2(); b++) {
                os << g.state_names[q] << " " << g.actions1[a] << " " << g.actions2[b]
                   << " -> {";
                bool first = true;
                for (auto &[r, pr] : g.delta[q][a][b].entries) {
                    os << (first ? " " : ", ") << g.state_names[r] << ": "
                       << pr.get_str();
                    first = false;
                }
                os << " }\n";
            }
    return os.str();
}

void write_game_file(const Game &g, const std::string &path) {
    std::ofstream out(path);
    out << serialize_game(g);
}

std::string set_to_string(const Game &g, StateSet s) {
    std::string out = "{";
    bool first = true;
    for (int q : bits(s)) {
        if (!first) out += ", ";
        out += g.state_names[q];
        first = false;
    }
    return out + "}";
}

}  // namespace posg
