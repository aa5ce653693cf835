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

#include "chainsched/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "chainsched/knapsack.hpp"

namespace chainsched {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Lcmpf: return "lcmpf";
        case Algorithm::Lcf: return "lcf";
        case Algorithm::Mcf: return "mcf";
        case Algorithm::Lcmcf: return "lcmcf";
    }
    return "lcmpf";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (auto a : kAllAlgorithms)
        if (to_string(a) == name) return a;
    return std::nullopt;
}

std::int64_t residual_criticality(std::int64_t cv, std::int64_t residual, std::int64_t required) {
    return (2 * cv * residual + required) / (2 * required);
}

namespace {

// Per-chain progress: index of the ready task and how many of its processors
// are still owed.
class ReadyState {
public:
    explicit ReadyState(const TaskSystem& system) : system_(system), next_(system.chains.size(), 0) {
        residual_.reserve(system.chains.size());
        for (const auto& c : system.chains) residual_.push_back(c[0]);
    }

    bool finished(std::size_t i) const { return next_[i] >= system_.chains[i].length(); }
    bool all_finished() const {
        for (std::size_t i = 0; i < next_.size(); ++i)
            if (!finished(i)) return false;
        return true;
    }
    std::size_t next(std::size_t i) const { return next_[i]; }
    int residual(std::size_t i) const { return residual_[i]; }
    int required(std::size_t i) const { return system_.chains[i][next_[i]]; }
    // A partially served head still counts as one whole task.
    std::size_t remaining_length(std::size_t i) const { return system_.chains[i].length() - next_[i]; }

    Allocation give(std::size_t i, int procs) {
        Allocation a{static_cast<int>(i), static_cast<int>(next_[i]), procs};
        residual_[i] -= procs;
        if (residual_[i] == 0 && ++next_[i] < system_.chains[i].length()) residual_[i] = required(i);
        return a;
    }

    std::size_t chains() const { return next_.size(); }

private:
    const TaskSystem& system_;
    std::vector<std::size_t> next_;
    std::vector<int> residual_;
};

enum class TieBreak { ChainIndex, Requirement, Criticality };

Schedule longest_chain_first(const TaskSystem& system, TieBreak tie) {
    require_valid(system);
    const auto cv = criticality(system);
    ReadyState state(system);
    Schedule out;

    // Secondary key; larger wins.
    auto tie_value = [&](std::size_t i) -> std::int64_t {
        switch (tie) {
            case TieBreak::ChainIndex: return 0;
            case TieBreak::Requirement: return state.residual(i);
            case TieBreak::Criticality:
                return residual_criticality(cv.at(i, state.next(i)), state.residual(i), state.required(i));
        }
        return 0;
    };

    std::vector<std::size_t> order;
    while (!state.all_finished()) {
        order.clear();
        for (std::size_t i = 0; i < state.chains(); ++i)
            if (!state.finished(i)) order.push_back(i);
        std::vector<std::int64_t> key(state.chains(), 0);
        for (auto i : order) key[i] = tie_value(i);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (state.remaining_length(a) != state.remaining_length(b))
                return state.remaining_length(a) > state.remaining_length(b);
            if (key[a] != key[b]) return key[a] > key[b];
            return a < b;
        });

        // Each chain contributes at most its head task to a slot: once the
        // head is complete its successor waits for the next slot.
        Slot slot;
        int free = system.processors;
        for (auto i : order) {
            if (free == 0) break;
            const int need = state.residual(i);
            if (system.splitable) {
                slot.push_back(state.give(i, std::min(free, need)));
                free -= slot.back().procs;
            } else if (need <= free) {
                slot.push_back(state.give(i, need));
                free -= need;
            }
            // else: visited, the task waits for a later slot
        }
        out.slots.push_back(std::move(slot));
    }
    return out;
}

}  // namespace

Schedule schedule_lcmpf(const TaskSystem& system) {
    return longest_chain_first(system, TieBreak::Requirement);
}

Schedule schedule_lcf(const TaskSystem& system) {
    if (system.splitable) throw ModeMismatch("lcf schedules non-splitable systems only");
    return longest_chain_first(system, TieBreak::ChainIndex);
}

Schedule schedule_lcmcf(const TaskSystem& system) {
    return longest_chain_first(system, TieBreak::Criticality);
}

Schedule schedule_mcf(const TaskSystem& system) {
    require_valid(system);
    const auto cv = criticality(system);
    ReadyState state(system);
    Schedule out;

    std::vector<knapsack::Item> ready;
    while (!state.all_finished()) {
        ready.clear();
        for (std::size_t i = 0; i < state.chains(); ++i) {
            if (state.finished(i)) continue;
            const auto j = state.next(i);
            ready.push_back({{static_cast<int>(i), static_cast<int>(j)},
                             state.residual(i),
                             residual_criticality(cv.at(i, j), state.residual(i), state.required(i))});
        }

        Slot slot;
        if (system.splitable) {
            for (const auto& portion : knapsack::select_fractional(ready, system.processors))
                slot.push_back(state.give(static_cast<std::size_t>(portion.item.id.chain),
                                          static_cast<int>(portion.amount)));
        } else {
            for (const auto& item : knapsack::select_01(ready, system.processors))
                slot.push_back(state.give(static_cast<std::size_t>(item.id.chain), static_cast<int>(item.weight)));
        }
        out.slots.push_back(std::move(slot));
    }
    return out;
}

Schedule schedule(const TaskSystem& system, Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Lcmpf: return schedule_lcmpf(system);
        case Algorithm::Lcf: return schedule_lcf(system);
        case Algorithm::Mcf: return schedule_mcf(system);
        case Algorithm::Lcmcf: return schedule_lcmcf(system);
    }
    throw Error("unknown algorithm");
}

Schedule schedule(const TaskSystem& system, std::string_view algorithm) {
    auto a = parse_algorithm(algorithm);
    if (!a) throw Error("unknown algorithm \"" + std::string(algorithm) + "\" (expected lcmpf, lcf, mcf or lcmcf)");
    return schedule(system, *a);
}

}  // namespace chainsched
