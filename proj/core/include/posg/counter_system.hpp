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

#include <gmpxx.h>
#include <string>
#include <vector>

namespace posg {

// Degenerate counter machine illustrating why witness sizes explode: a
// single walk q_n -> q_(n-1) -> ... -> q_0 where looping at q_i increments
// c_i but halves every higher counter, and the final step q_1 -> q_0
// halves everything. Reaching q_0 with all counters positive forces loop
// counts that grow as a tower: k_1 = 2 and k_{i+1} = k_i * 2^{k_i}.
//
// This is a one-player system, not a game; it is kept out of the Game
// type on purpose and surfaces in the CLI only as a description.
struct CounterConfig {
    int state;  // i in [0, n]; execution starts at n and ends at 0
    std::vector<mpz_class> c;  // c[0] unused; counters are c[1..n]

    bool all_positive() const {
        for (size_t i = 1; i < c.size(); i++)
            if (c[i] <= 0) return false;
        return true;
    }
};

struct CounterSystem {
    int n;

    CounterConfig initial() const {
        return {n, std::vector<mpz_class>(n + 1, mpz_class(0))};
    }
    // Loop at q_i: c_i += 1, c_j = floor(c_j / 2) for j > i. Only valid at
    // i >= 1.
    CounterConfig loop(const CounterConfig &cfg) const;
    // Advance q_i -> q_{i-1}: counters unchanged except the final step
    // q_1 -> q_0, which halves every counter.
    CounterConfig advance(const CounterConfig &cfg) const;

    // Effect of looping k times at the current state, in closed form.
    CounterConfig loop_many(const CounterConfig &cfg, const mpz_class &k) const;
};

// Loop counts k_1..k_n (returned with k[i] at index i) of the greedy
// schedule: loop exactly as often as needed so that after all later
// halvings every counter is still positive at q_0. k_i = 2^(1 + sum of
// earlier k_j), equivalently k_1 = 2, k_{i+1} = k_i * 2^(k_i).
std::vector<mpz_class> greedy_loop_counts(int n);

// Configurations right after each phase of the greedy schedule (phase i =
// the loops performed at q_i, from i = n down to 1), then the final
// config at q_0. Uses the closed form, so it is exact even for the
// tower-sized counts.
std::vector<CounterConfig> greedy_trace(int n);

// Total steps (loops plus walk moves) of the greedy schedule.
mpz_class greedy_total_steps(int n);

// Exhaustive check for small n: no execution with fewer total steps
// reaches q_0 with all counters positive. Search capped; n <= 2 intended.
bool greedy_is_shortest_bfs(int n);

// Plain-text description for the CLI.
std::string describe_counter_system(int n);

}  // namespace posg
