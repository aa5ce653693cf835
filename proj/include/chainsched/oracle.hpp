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

#pragma once

#include <cstddef>
#include <optional>

#include "chainsched/schedule.hpp"
#include "chainsched/workload.hpp"

namespace chainsched::oracle {

inline constexpr std::size_t kDefaultBudget = 10'000'000;

struct Options {
    /// Maximum number of distinct search states expanded.
    std::size_t budget = kDefaultBudget;
    /// Explore slots that leave processors idle while ready work could use
    /// them. Only useful to cross-check the no-idle restriction on tiny
    /// instances; the search space grows quickly.
    bool allow_idle = false;
};

enum class Status { Optimal, BudgetExceeded };

struct Result {
    Status status = Status::BudgetExceeded;
    int makespan = 0;  // meaningful only when status == Optimal
    std::size_t states = 0;

    bool ok() const { return status == Status::Optimal; }
};

struct ScheduleResult {
    Status status = Status::BudgetExceeded;
    std::optional<Schedule> schedule;
    std::size_t states = 0;

    bool ok() const { return status == Status::Optimal; }
};

/// Minimum makespan over all valid schedules, found by exhaustive search over
/// per-chain progress states with memoised completion costs. Meant for desk
/// scale (a handful of short chains on a dozen processors).
/// Throws InvalidInput for invalid systems.
Result optimal_makespan(const TaskSystem& system, const Options& options = {});

/// A schedule achieving optimal_makespan.
ScheduleResult optimal_schedule(const TaskSystem& system, const Options& options = {});

}  // namespace chainsched::oracle
