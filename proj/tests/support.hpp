// Copyright 2026 The chainsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared fixtures and test-only reference implementations. Nothing here calls
// into the library code paths it is used to check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chainsched/knapsack.hpp"
#include "chainsched/workload.hpp"

#ifndef CHAINSCHED_FIXTURE_DIR
#define CHAINSCHED_FIXTURE_DIR "tests/fixtures"
#endif

namespace chainsched::testing {

inline std::string fixture(const std::string& name) { return std::string(CHAINSCHED_FIXTURE_DIR) + "/" + name; }

/// Four uniform chains on 16 processors: requirements 8, 4, 6, 10 with
/// lengths 4, 3, 5, 4.
inline TaskSystem uniform_16proc(bool splitable) {
    TaskSystem s;
    s.processors = 16;
    s.splitable = splitable;
    s.chains = {{{8, 8, 8, 8}}, {{4, 4, 4}}, {{6, 6, 6, 6, 6}}, {{10, 10, 10, 10}}};
    return s;
}

inline TaskSystem make_system(int processors, std::vector<std::vector<int>> chains, bool splitable) {
    TaskSystem s;
    s.processors = processors;
    s.splitable = splitable;
    for (auto& c : chains) s.chains.push_back({std::move(c)});
    return s;
}

/// Desk-scale instance for oracle sweeps: N <= max_chains, n_i <= max_len,
/// M <= max_procs, requirements anywhere in [1, M].
inline TaskSystem small_system(std::uint64_t seed, ChainClass cls, bool splitable, int max_chains = 4,
                               int max_len = 4, int max_procs = 8) {
    std::mt19937_64 engine(seed ^ 0x9e3779b97f4a7c15ULL);
    GeneratorConfig c;
    c.seed = seed;
    c.num_chains = static_cast<int>(uniform_int(engine, 1, max_chains));
    c.processors = static_cast<int>(uniform_int(engine, 1, max_procs));
    c.chain_class = cls;
    c.min_len = 1;
    c.max_len = max_len;
    c.min_req = 1;
    c.max_req = c.processors;
    c.splitable = splitable;
    return generate(c);
}

/// Medium instance spanning the parameter space used by property sweeps.
inline TaskSystem medium_system(std::uint64_t seed, ChainClass cls, bool splitable) {
    std::mt19937_64 engine(seed * 0x2545f4914f6cdd1dULL + 7);
    GeneratorConfig c;
    c.seed = seed;
    c.num_chains = static_cast<int>(uniform_int(engine, 1, 20));
    c.processors = static_cast<int>(uniform_int(engine, 1, 64));
    c.chain_class = cls;
    c.min_len = 1;
    c.max_len = static_cast<int>(uniform_int(engine, 1, 10));
    c.min_req = 1;
    c.max_req = static_cast<int>(uniform_int(engine, 1, c.processors));
    c.phase_variation = (seed % 3 == 0) ? 0.5 : 0.0;
    c.splitable = splitable;
    return generate(c);
}

inline TaskSystem reversed(TaskSystem s) {
    for (auto& c : s.chains) std::reverse(c.tasks.begin(), c.tasks.end());
    return s;
}

/// Exhaustive 0-1 knapsack: best value and, among optimal subsets, the
/// lexicographically smallest sorted id list.
struct BruteKnapsack {
    std::int64_t value = 0;
    std::vector<knapsack::ItemId> ids;
};

inline BruteKnapsack brute_knapsack(const std::vector<knapsack::Item>& items, std::int64_t capacity) {
    BruteKnapsack best;
    bool have = false;
    const std::size_t n = items.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::int64_t w = 0, v = 0;
        std::vector<knapsack::ItemId> ids;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                w += items[i].weight;
                v += items[i].value;
                ids.push_back(items[i].id);
            }
        if (w > capacity) continue;
        std::sort(ids.begin(), ids.end());
        if (!have || v > best.value || (v == best.value && ids < best.ids)) {
            best = {v, ids};
            have = true;
        }
    }
    return best;
}

/// Level-by-level enumeration of every reachable progress state, allowing any
/// allocation (idle processors included). Returns the first level at which
/// all chains are finished. Only for micro instances.
inline int brute_force_makespan(const TaskSystem& s) {
    using State = std::vector<std::pair<int, int>>;  // (next task, processors still owed)
    const auto n = s.chains.size();
    State start;
    for (const auto& c : s.chains) start.push_back({0, c[0]});
    auto finished = [&](const State& st) {
        for (std::size_t i = 0; i < n; ++i)
            if (st[i].first < static_cast<int>(s.chains[i].length())) return false;
        return true;
    };

    std::set<State> frontier{start};
    for (int level = 0;; ++level) {
        for (const auto& st : frontier)
            if (finished(st)) return level;
        std::set<State> next;
        for (const auto& st : frontier) {
            // Enumerate allocations chain by chain.
            std::vector<State> partial{st};
            std::vector<int> used{0};
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<State> grown;
                std::vector<int> grown_used;
                for (std::size_t k = 0; k < partial.size(); ++k) {
                    const auto [task, owed] = st[i];
                    grown.push_back(partial[k]);
                    grown_used.push_back(used[k]);
                    if (task >= static_cast<int>(s.chains[i].length())) continue;
                    for (int a = 1; a <= owed && used[k] + a <= s.processors; ++a) {
                        if (!s.splitable && a != owed) continue;
                        auto t = partial[k];
                        if (a == owed) {
                            t[i].first = task + 1;
                            t[i].second = task + 1 < static_cast<int>(s.chains[i].length())
                                              ? s.chains[i][static_cast<std::size_t>(task + 1)]
                                              : 0;
                        } else {
                            t[i].second = owed - a;
                        }
                        grown.push_back(t);
                        grown_used.push_back(used[k] + a);
                    }
                }
                partial = std::move(grown);
                used = std::move(grown_used);
            }
            next.insert(partial.begin(), partial.end());
        }
        frontier = std::move(next);
    }
}

}  // namespace chainsched::testing
