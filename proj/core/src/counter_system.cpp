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

#include "posg/counter_system.hpp"

#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace posg {

CounterConfig CounterSystem::loop(const CounterConfig &cfg) const {
    if (cfg.state < 1) throw std::logic_error("loop at q_0");
    CounterConfig out = cfg;
    out.c[cfg.state] += 1;
    for (int j = cfg.state + 1; j <= n; j++) out.c[j] >>= 1;
    return out;
}

CounterConfig CounterSystem::advance(const CounterConfig &cfg) const {
    if (cfg.state < 1) throw std::logic_error("advance at q_0");
    CounterConfig out = cfg;
    out.state -= 1;
    if (cfg.state == 1)
        for (int j = 1; j <= n; j++) out.c[j] >>= 1;
    return out;
}

CounterConfig CounterSystem::loop_many(const CounterConfig &cfg,
                                       const mpz_class &k) const {
    if (cfg.state < 1) throw std::logic_error("loop at q_0");
    CounterConfig out = cfg;
    out.c[cfg.state] += k;
    if (!mpz_fits_ulong_p(k.get_mpz_t())) {
        // Shifting by more bits than any counter holds: everything above
        // zeroes out.
        for (int j = cfg.state + 1; j <= n; j++) out.c[j] = 0;
        return out;
    }
    unsigned long sh = mpz_get_ui(k.get_mpz_t());
    for (int j = cfg.state + 1; j <= n; j++) {
        if (mpz_sizeinbase(out.c[j].get_mpz_t(), 2) <= sh)
            out.c[j] = 0;
        else
            out.c[j] >>= sh;
    }
    return out;
}

std::vector<mpz_class> greedy_loop_counts(int n) {
    // k_i = 2^(1 + k_1 + ... + k_{i-1}); the recurrence k_{i+1} = k_i 2^{k_i}
    // follows. Exponents beyond a few thousand bits are representable but
    // pointless to shift further, so n is capped where the closed form is
    // still materializable.
    if (n < 1 || n > 4) throw std::invalid_argument("c<n> needs 1 <= n <= 4");
    std::vector<mpz_class> k(n + 1);
    mpz_class expsum = 1;
    for (int i = 1; i <= n; i++) {
        if (!mpz_fits_ulong_p(expsum.get_mpz_t()))
            throw std::invalid_argument("loop count exponent too large");
        k[i] = mpz_class(1) << mpz_get_ui(expsum.get_mpz_t());
        expsum += k[i];
    }
    return k;
}

std::vector<CounterConfig> greedy_trace(int n) {
    CounterSystem cs{n};
    auto k = greedy_loop_counts(n);
    std::vector<CounterConfig> out;
    CounterConfig cfg = cs.initial();
    for (int i = n; i >= 1; i--) {
        cfg = cs.loop_many(cfg, k[i]);
        out.push_back(cfg);
        cfg = cs.advance(cfg);
    }
    out.push_back(cfg);
    return out;
}

mpz_class greedy_total_steps(int n) {
    auto k = greedy_loop_counts(n);
    mpz_class total = n;  // the walk moves
    for (int i = 1; i <= n; i++) total += k[i];
    return total;
}

bool greedy_is_shortest_bfs(int n) {
    if (n > 2) throw std::invalid_argument("BFS check intended for n <= 2");
    CounterSystem cs{n};
    mpz_class budget = greedy_total_steps(n);
    // BFS over configurations; counters never need to exceed the greedy
    // counts, so the space is tiny.
    long cap = mpz_get_si(mpz_class(budget + 2).get_mpz_t());
    std::map<std::vector<long>, long> dist;
    auto key = [&](const CounterConfig &c) {
        std::vector<long> k{c.state};
        for (int i = 1; i <= n; i++) k.push_back(mpz_get_si(c.c[i].get_mpz_t()));
        return k;
    };
    std::queue<CounterConfig> q;
    q.push(cs.initial());
    dist[key(cs.initial())] = 0;
    long best = -1;
    while (!q.empty()) {
        CounterConfig c = q.front();
        q.pop();
        long d = dist[key(c)];
        if (c.state == 0) {
            if (c.all_positive()) { best = d; break; }  // BFS: first hit is optimal
            continue;
        }
        if (d >= cap) continue;
        for (int mv = 0; mv < 2; mv++) {
            CounterConfig nc = mv == 0 ? cs.loop(c) : cs.advance(c);
            bool big = false;
            for (int i = 1; i <= n; i++)
                if (nc.c[i] > cap) big = true;
            if (big) continue;
            auto kk = key(nc);
            if (!dist.count(kk)) {
                dist[kk] = d + 1;
                q.push(nc);
            }
        }
    }
    return best == mpz_get_si(budget.get_mpz_t());
}

std::string describe_counter_system(int n) {
    std::ostringstream os;
    os << "counter system c" << n << "\n";
    os << "states q" << n << " .. q0, counters c1 .. c" << n << ", all start at 0\n";
    os << "loop at q_i:    c_i += 1; c_j := floor(c_j / 2) for every j > i\n";
    os << "move q_i->q_i-1: counters unchanged, except q1->q0 halves all\n";
    os << "goal: reach q0 with every counter positive\n\n";
    auto k = greedy_loop_counts(n);
    os << "greedy loop counts:\n";
    for (int i = 1; i <= n; i++) {
        std::string s = k[i].get_str();
        if (s.size() > 40) {
            size_t bits = mpz_sizeinbase(k[i].get_mpz_t(), 2);
            os << "  k_" << i << " = 2^" << (bits - 1) << "\n";
        } else {
            os << "  k_" << i << " = " << s << "\n";
        }
    }
    mpz_class total = greedy_total_steps(n);
    std::string ts = total.get_str();
    if (ts.size() > 40)
        os << "total steps ~ 2^" << (mpz_sizeinbase(total.get_mpz_t(), 2) - 1) << "\n";
    else
        os << "total steps = " << ts << "\n";
    return os.str();
}

}  // namespace posg
