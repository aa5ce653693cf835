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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chainsched/workload.hpp"

namespace chainsched {

/// Processors handed to one task in one slot. Indices are 0-based; external
/// formats print them 1-based.
struct Allocation {
    int chain = 0;
    int task = 0;
    int procs = 0;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

using Slot = std::vector<Allocation>;

/// slots[t] holds everything running during unit time step t. Allocations
/// keep the order in which the scheduler placed them.
struct Schedule {
    std::vector<Slot> slots;

    int makespan() const { return static_cast<int>(slots.size()); }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Per-task suffix sums of processor requirements: value(i, j) is the work of
/// task j of chain i plus every task after it.
class CriticalityTable {
public:
    CriticalityTable() = default;
    explicit CriticalityTable(std::vector<std::vector<std::int64_t>> values)
        : values_(std::move(values)) {}

    std::int64_t at(std::size_t chain, std::size_t task) const { return values_[chain][task]; }
    const std::vector<std::int64_t>& chain(std::size_t i) const { return values_[i]; }
    std::size_t chains() const { return values_.size(); }

private:
    std::vector<std::vector<std::int64_t>> values_;
};

/// max(ceil(total work / M), longest chain).
std::int64_t lower_bound(const TaskSystem& system);

CriticalityTable criticality(const TaskSystem& system);

enum class ScheduleRule {
    InvalidSystem,
    BadIndex,          // chain/task out of range
    NonPositiveAllocation,
    Capacity,          // slot uses more than M processors
    Incomplete,        // task received fewer processors than it needs
    Overallocated,     // task received more processors than it needs
    Precedence,        // task j+1 touches a slot not after task j's last
    Split,             // non-splitable task spread over several slots
    PartialAllocation, // non-splitable task given fewer/more than p at once
    DuplicateInSlot,   // same task twice within one slot
    EmptyTrailingSlot,
};

std::string_view to_string(ScheduleRule rule);

struct ScheduleViolation {
    ScheduleRule rule;
    std::optional<int> slot;
    std::optional<int> chain;
    std::optional<int> task;
    std::string message;
};

struct ScheduleReport {
    std::vector<ScheduleViolation> violations;
    bool ok() const { return violations.empty(); }
};

ScheduleReport check_schedule(const TaskSystem& system, const Schedule& schedule);

struct ScheduleMetrics {
    std::int64_t makespan = 0;
    std::int64_t total_waste = 0;
    double avg_waste = 0.0;
    std::int64_t lower_bound = 0;
    double ratio = 0.0;

    friend bool operator==(const ScheduleMetrics&, const ScheduleMetrics&) = default;
};

/// Idle processors in each slot.
std::vector<std::int64_t> slot_waste(const TaskSystem& system, const Schedule& schedule);

/// Throws InvalidInput if check_schedule reports any violation.
ScheduleMetrics metrics(const TaskSystem& system, const Schedule& schedule);

/// Sum of the outstanding requirements of all ready tasks at the start of each
/// slot, replayed from the schedule. A partially served head task counts with
/// its residual requirement. Requires a valid schedule.
std::vector<std::int64_t> ready_demand(const TaskSystem& system, const Schedule& schedule);

/// Schedule document: {"slots": [[{"chain", "task", "procs"}, ...], ...]}
/// with 1-based chain and task numbers, optionally followed by a "metrics"
/// object. Output is byte-stable.
std::string write_schedule(const Schedule& schedule,
                           const std::optional<ScheduleMetrics>& metrics = std::nullopt);
Schedule read_schedule(std::string_view text);

}  // namespace chainsched
