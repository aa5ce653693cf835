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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "chainsched/schedule.hpp"
#include "chainsched/workload.hpp"

namespace chainsched {

/// Algorithm name not supported by the system's mode (LCF on a splitable
/// system).
class ModeMismatch : public Error {
public:
    using Error::Error;
};

enum class Algorithm { Lcmpf, Lcf, Mcf, Lcmcf };

inline constexpr std::array<Algorithm, 4> kAllAlgorithms = {Algorithm::Lcmpf, Algorithm::Lcf,
                                                            Algorithm::Mcf, Algorithm::Lcmcf};

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// All schedulers throw InvalidInput for systems failing validate_system and
// place allocations within a slot in the order they were chosen. Remaining
// ties always fall to the lower chain index.

/// Longest chain, then largest ready requirement. In splitable mode the ready
/// requirement is the residual of a partially served head task, and a task
/// that does not fit gets every remaining processor. In non-splitable mode a
/// task that does not fit is skipped for this slot (LCF scan).
Schedule schedule_lcmpf(const TaskSystem& system);

/// Longest chain first, whole tasks only; chains whose ready task does not
/// fit are skipped for the slot. Throws ModeMismatch on splitable systems.
Schedule schedule_lcf(const TaskSystem& system);

/// Per slot, the ready set that maximises total criticality within M
/// processors: exact 0-1 knapsack for whole tasks, greedy fractional knapsack
/// when tasks may be split.
Schedule schedule_mcf(const TaskSystem& system);

/// Longest chain, then largest ready-task criticality. Splits like LCMPF in
/// splitable mode, skips like LCF otherwise.
Schedule schedule_lcmcf(const TaskSystem& system);

Schedule schedule(const TaskSystem& system, Algorithm algorithm);
/// Throws Error for unknown names.
Schedule schedule(const TaskSystem& system, std::string_view algorithm);

/// Criticality of a head task that still needs `residual` of its `required`
/// processors: cv * residual / required, rounded half up.
std::int64_t residual_criticality(std::int64_t cv, std::int64_t residual, std::int64_t required);

}  // namespace chainsched
