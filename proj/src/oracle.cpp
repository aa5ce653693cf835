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

#include "chainsched/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

namespace chainsched::oracle {

namespace {

struct BudgetExhausted {};

// Progress of every chain, indexed like system.chains. residual is the part of
// the head task's requirement not yet delivered; 0 once the chain is done.
struct Progress {
    std::vector<std::uint16_t> next;
    std::vector<std::uint16_t> residual;
};

// Allocation per chain for one slot.
using Step = std::vector<int>;

class Search {
public:
    Search(const TaskSystem& system, const Options& options)
        : system_(system), options_(options), klass_(system.chains.size()) {
        // Chains with identical task lists are interchangeable; states that
        // differ only by a permutation of them share a memo entry.
        std::map<std::vector<int>, std::uint16_t> ids;
        for (std::size_t i = 0; i < system.chains.size(); ++i) {
            auto [it, inserted] = ids.emplace(system.chains[i].tasks, static_cast<std::uint16_t>(ids.size()));
            klass_[i] = it->second;
        }
        suffix_work_.resize(system.chains.size());
        for (std::size_t i = 0; i < system.chains.size(); ++i) {
            const auto& c = system.chains[i];
            suffix_work_[i].assign(c.length() + 1, 0);
            for (std::size_t j = c.length(); j-- > 0;) suffix_work_[i][j] = suffix_work_[i][j + 1] + c[j];
        }
    }

    Progress start() const {
        Progress p;
        for (const auto& c : system_.chains) {
            p.next.push_back(0);
            p.residual.push_back(static_cast<std::uint16_t>(c[0]));
        }
        return p;
    }

    bool done(const Progress& s, std::size_t i) const { return s.next[i] >= system_.chains[i].length(); }

    bool finished(const Progress& s) const {
        for (std::size_t i = 0; i < s.next.size(); ++i)
            if (!done(s, i)) return false;
        return true;
    }

    std::int64_t bound(const Progress& s) const {
        std::int64_t work = 0;
        std::int64_t longest = 0;
        for (std::size_t i = 0; i < s.next.size(); ++i) {
            if (done(s, i)) continue;
            const auto j = s.next[i];
            work += s.residual[i] + suffix_work_[i][j + 1u];
            longest = std::max<std::int64_t>(longest, static_cast<std::int64_t>(system_.chains[i].length() - j));
        }
        const std::int64_t m = system_.processors;
        return std::max((work + m - 1) / m, longest);
    }

    Progress apply(const Progress& s, const Step& step) const {
        Progress t = s;
        for (std::size_t i = 0; i < step.size(); ++i) {
            if (step[i] == 0) continue;
            t.residual[i] = static_cast<std::uint16_t>(t.residual[i] - step[i]);
            if (t.residual[i] == 0) {
                ++t.next[i];
                t.residual[i] = done(t, i) ? 0 : static_cast<std::uint16_t>(system_.chains[i][t.next[i]]);
            }
        }
        return t;
    }

    std::string key(const Progress& s) const {
        std::vector<std::array<std::uint16_t, 3>> parts;
        parts.reserve(s.next.size());
        for (std::size_t i = 0; i < s.next.size(); ++i) parts.push_back({klass_[i], s.next[i], s.residual[i]});
        std::sort(parts.begin(), parts.end());
        std::string k(parts.size() * sizeof(parts[0]), '\0');
        std::memcpy(k.data(), parts.data(), k.size());
        return k;
    }

    std::vector<Step> steps(const Progress& s) const {
        std::vector<std::size_t> ready;
        std::int64_t demand = 0;
        for (std::size_t i = 0; i < s.next.size(); ++i) {
            if (done(s, i)) continue;
            ready.push_back(i);
            demand += s.residual[i];
        }
        std::vector<Step> out;
        Step step(s.next.size(), 0);
        if (system_.splitable) {
            const std::int64_t target = std::min<std::int64_t>(system_.processors, demand);
            split_steps(s, ready, 0, 0, target, step, out);
        } else {
            whole_steps(s, ready, 0, 0, step, out);
        }
        return out;
    }

    int solve(const Progress& s) {
        if (finished(s)) return 0;
        const auto k = key(s);
        if (auto it = memo_.find(k); it != memo_.end()) return it->second;
        if (expanded_ >= options_.budget) throw BudgetExhausted{};
        ++expanded_;

        const auto floor = bound(s);
        struct Child {
            Progress state;
            std::int64_t bound;
        };
        std::vector<Child> children;
        for (const auto& step : steps(s)) {
            auto t = apply(s, step);
            children.push_back({t, bound(t)});
        }
        std::stable_sort(children.begin(), children.end(),
                         [](const Child& a, const Child& b) { return a.bound < b.bound; });

        int best = std::numeric_limits<int>::max();
        for (const auto& child : children) {
            if (1 + child.bound >= best) break;
            best = std::min(best, 1 + solve(child.state));
            if (best == floor) break;
        }
        memo_.emplace(k, best);
        return best;
    }

    std::size_t states() const { return expanded_; }

    Slot to_slot(const Progress& s, const Step& step) const {
        Slot slot;
        for (std::size_t i = 0; i < step.size(); ++i)
            if (step[i] > 0) slot.push_back({static_cast<int>(i), static_cast<int>(s.next[i]), step[i]});
        return slot;
    }

private:
    void whole_steps(const Progress& s, const std::vector<std::size_t>& ready, std::size_t k, std::int64_t used,
                     Step& step, std::vector<Step>& out) const {
        if (k == ready.size()) {
            if (used == 0) return;
            if (!options_.allow_idle) {
                // Maximal subsets only: no skipped ready task fits in the gap.
                for (auto i : ready)
                    if (step[i] == 0 && used + s.residual[i] <= system_.processors) return;
            }
            out.push_back(step);
            return;
        }
        const auto i = ready[k];
        if (used + s.residual[i] <= system_.processors) {
            step[i] = s.residual[i];
            whole_steps(s, ready, k + 1, used + s.residual[i], step, out);
            step[i] = 0;
        }
        whole_steps(s, ready, k + 1, used, step, out);
    }

    // Integer allocations to ready chains. Without allow_idle the total must
    // equal `target` = min(M, outstanding demand).
    void split_steps(const Progress& s, const std::vector<std::size_t>& ready, std::size_t k, std::int64_t used,
                     std::int64_t target, Step& step, std::vector<Step>& out) const {
        if (k == ready.size()) {
            if (used == 0) return;
            if (!options_.allow_idle && used != target) return;
            out.push_back(step);
            return;
        }
        const auto i = ready[k];
        const std::int64_t cap = std::min<std::int64_t>(s.residual[i], system_.processors - used);
        for (std::int64_t a = cap; a >= 0; --a) {
            step[i] = static_cast<int>(a);
            split_steps(s, ready, k + 1, used + a, target, step, out);
        }
        step[i] = 0;
    }

    const TaskSystem& system_;
    Options options_;
    std::vector<std::uint16_t> klass_;
    std::vector<std::vector<std::int64_t>> suffix_work_;
    std::unordered_map<std::string, int> memo_;
    std::size_t expanded_ = 0;
};

void require_searchable(const TaskSystem& system) {
    require_valid(system);
    constexpr std::size_t limit = std::numeric_limits<std::uint16_t>::max();
    if (static_cast<std::size_t>(system.processors) > limit || system.longest_chain() > limit ||
        system.chains.size() > limit)
        throw InvalidInput("system is far beyond the exact search's range");
}

}  // namespace

Result optimal_makespan(const TaskSystem& system, const Options& options) {
    require_searchable(system);
    Search search(system, options);
    Result r;
    try {
        r.makespan = search.solve(search.start());
        r.status = Status::Optimal;
    } catch (const BudgetExhausted&) {
        r.status = Status::BudgetExceeded;
    }
    r.states = search.states();
    return r;
}

ScheduleResult optimal_schedule(const TaskSystem& system, const Options& options) {
    require_searchable(system);
    Search search(system, options);
    ScheduleResult r;
    try {
        auto state = search.start();
        int remaining = search.solve(state);
        Schedule schedule;
        while (remaining > 0) {
            bool advanced = false;
            for (const auto& step : search.steps(state)) {
                auto next = search.apply(state, step);
                if (1 + search.solve(next) == remaining) {
                    schedule.slots.push_back(search.to_slot(state, step));
                    state = std::move(next);
                    --remaining;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) throw Error("oracle witness reconstruction failed");
        }
        r.schedule = std::move(schedule);
        r.status = Status::Optimal;
    } catch (const BudgetExhausted&) {
        r.status = Status::BudgetExceeded;
    }
    r.states = search.states();
    return r;
}

}  // namespace chainsched::oracle
