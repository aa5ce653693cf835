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

#include "chainsched/schedule.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace chainsched {

std::int64_t lower_bound(const TaskSystem& system) {
    const std::int64_t m = system.processors;
    const std::int64_t work = system.total_work();
    const std::int64_t by_work = (work + m - 1) / m;
    return std::max(by_work, static_cast<std::int64_t>(system.longest_chain()));
}

CriticalityTable criticality(const TaskSystem& system) {
    std::vector<std::vector<std::int64_t>> values;
    values.reserve(system.chains.size());
    for (const auto& chain : system.chains) {
        std::vector<std::int64_t> cv(chain.length());
        std::int64_t suffix = 0;
        for (std::size_t j = chain.length(); j-- > 0;) {
            suffix += chain[j];
            cv[j] = suffix;
        }
        values.push_back(std::move(cv));
    }
    return CriticalityTable(std::move(values));
}

std::string_view to_string(ScheduleRule rule) {
    switch (rule) {
        case ScheduleRule::InvalidSystem: return "invalid-system";
        case ScheduleRule::BadIndex: return "bad-index";
        case ScheduleRule::NonPositiveAllocation: return "non-positive-allocation";
        case ScheduleRule::Capacity: return "capacity";
        case ScheduleRule::Incomplete: return "incomplete";
        case ScheduleRule::Overallocated: return "overallocated";
        case ScheduleRule::Precedence: return "precedence";
        case ScheduleRule::Split: return "split";
        case ScheduleRule::PartialAllocation: return "partial-allocation";
        case ScheduleRule::DuplicateInSlot: return "duplicate-in-slot";
        case ScheduleRule::EmptyTrailingSlot: return "empty-trailing-slot";
    }
    return "unknown";
}

namespace {

std::string task_name(int chain, int task) {
    return "T(" + std::to_string(chain + 1) + "," + std::to_string(task + 1) + ")";
}

struct TaskSpan {
    int first = -1;
    int last = -1;
    int slots = 0;
    std::int64_t given = 0;
};

}  // namespace

ScheduleReport check_schedule(const TaskSystem& system, const Schedule& schedule) {
    ScheduleReport report;
    auto add = [&](ScheduleRule rule, std::optional<int> slot, std::optional<int> chain,
                   std::optional<int> task, std::string message) {
        report.violations.push_back({rule, slot, chain, task, std::move(message)});
    };

    if (auto sys = validate_system(system); !sys.ok()) {
        for (const auto& v : sys.violations)
            add(ScheduleRule::InvalidSystem, std::nullopt,
                v.chain ? std::optional<int>(static_cast<int>(*v.chain)) : std::nullopt,
                v.task ? std::optional<int>(static_cast<int>(*v.task)) : std::nullopt, v.message);
        return report;
    }

    std::vector<std::vector<TaskSpan>> spans(system.chains.size());
    for (std::size_t i = 0; i < system.chains.size(); ++i) spans[i].resize(system.chains[i].length());

    for (int t = 0; t < schedule.makespan(); ++t) {
        const auto& slot = schedule.slots[static_cast<std::size_t>(t)];
        std::int64_t used = 0;
        std::set<std::pair<int, int>> seen;
        for (const auto& a : slot) {
            if (a.chain < 0 || a.chain >= static_cast<int>(system.chains.size()) || a.task < 0 ||
                a.task >= static_cast<int>(system.chains[static_cast<std::size_t>(a.chain)].length())) {
                add(ScheduleRule::BadIndex, t, a.chain, a.task,
                    "slot " + std::to_string(t) + " names nonexistent task " + task_name(a.chain, a.task));
                continue;
            }
            if (a.procs < 1) {
                add(ScheduleRule::NonPositiveAllocation, t, a.chain, a.task,
                    "slot " + std::to_string(t) + " gives " + std::to_string(a.procs) +
                        " processors to " + task_name(a.chain, a.task));
                continue;
            }
            if (!seen.emplace(a.chain, a.task).second)
                add(ScheduleRule::DuplicateInSlot, t, a.chain, a.task,
                    task_name(a.chain, a.task) + " appears twice in slot " + std::to_string(t));
            used += a.procs;
            auto& span = spans[static_cast<std::size_t>(a.chain)][static_cast<std::size_t>(a.task)];
            if (span.first < 0) span.first = t;
            span.last = t;
            ++span.slots;
            span.given += a.procs;

            const int p = system.chains[static_cast<std::size_t>(a.chain)][static_cast<std::size_t>(a.task)];
            if (!system.splitable && a.procs != p)
                add(ScheduleRule::PartialAllocation, t, a.chain, a.task,
                    task_name(a.chain, a.task) + " needs " + std::to_string(p) + " processors at once, got " +
                        std::to_string(a.procs) + " in slot " + std::to_string(t));
        }
        if (used > system.processors)
            add(ScheduleRule::Capacity, t, std::nullopt, std::nullopt,
                "slot " + std::to_string(t) + " uses " + std::to_string(used) + " of " +
                    std::to_string(system.processors) + " processors");
    }

    for (std::size_t i = 0; i < system.chains.size(); ++i) {
        const int ci = static_cast<int>(i);
        for (std::size_t j = 0; j < system.chains[i].length(); ++j) {
            const int tj = static_cast<int>(j);
            const auto& span = spans[i][j];
            const int p = system.chains[i][j];
            if (span.given < p)
                add(ScheduleRule::Incomplete, std::nullopt, ci, tj,
                    task_name(ci, tj) + " received " + std::to_string(span.given) + " of " +
                        std::to_string(p) + " processors");
            else if (span.given > p)
                add(ScheduleRule::Overallocated, std::nullopt, ci, tj,
                    task_name(ci, tj) + " received " + std::to_string(span.given) + " processors but needs " +
                        std::to_string(p));
            if (!system.splitable && span.slots > 1)
                add(ScheduleRule::Split, span.last, ci, tj,
                    task_name(ci, tj) + " is non-splitable but occupies " + std::to_string(span.slots) + " slots");
            if (j > 0) {
                const auto& prev = spans[i][j - 1];
                if (span.first >= 0 && (prev.last < 0 || prev.last >= span.first))
                    add(ScheduleRule::Precedence, span.first, ci, tj,
                        task_name(ci, tj) + " starts in slot " + std::to_string(span.first) +
                            " before its predecessor finishes");
            }
        }
    }

    if (!schedule.slots.empty() && schedule.slots.back().empty())
        add(ScheduleRule::EmptyTrailingSlot, schedule.makespan() - 1, std::nullopt, std::nullopt,
            "schedule ends with an empty slot");
    return report;
}

std::vector<std::int64_t> slot_waste(const TaskSystem& system, const Schedule& schedule) {
    std::vector<std::int64_t> waste;
    waste.reserve(schedule.slots.size());
    for (const auto& slot : schedule.slots) {
        std::int64_t used = 0;
        for (const auto& a : slot) used += a.procs;
        waste.push_back(system.processors - used);
    }
    return waste;
}

ScheduleMetrics metrics(const TaskSystem& system, const Schedule& schedule) {
    if (auto report = check_schedule(system, schedule); !report.ok())
        throw InvalidInput("invalid schedule: " + report.violations.front().message);
    ScheduleMetrics m;
    m.makespan = schedule.makespan();
    for (auto w : slot_waste(system, schedule)) m.total_waste += w;
    m.avg_waste = static_cast<double>(m.total_waste) / system.processors;
    m.lower_bound = lower_bound(system);
    m.ratio = static_cast<double>(m.makespan) / static_cast<double>(m.lower_bound);
    return m;
}

std::vector<std::int64_t> ready_demand(const TaskSystem& system, const Schedule& schedule) {
    if (auto report = check_schedule(system, schedule); !report.ok())
        throw InvalidInput("invalid schedule: " + report.violations.front().message);
    std::vector<std::size_t> next(system.chains.size(), 0);
    std::vector<std::int64_t> residual(system.chains.size());
    for (std::size_t i = 0; i < system.chains.size(); ++i) residual[i] = system.chains[i][0];

    std::vector<std::int64_t> demand;
    demand.reserve(schedule.slots.size());
    for (const auto& slot : schedule.slots) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < system.chains.size(); ++i)
            if (next[i] < system.chains[i].length()) sum += residual[i];
        demand.push_back(sum);
        for (const auto& a : slot) {
            const auto i = static_cast<std::size_t>(a.chain);
            residual[i] -= a.procs;
            if (residual[i] == 0 && ++next[i] < system.chains[i].length())
                residual[i] = system.chains[i][next[i]];
        }
    }
    return demand;
}

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string write_schedule(const Schedule& schedule, const std::optional<ScheduleMetrics>& m) {
    std::ostringstream out;
    out << "{\n  \"slots\": [";
    for (std::size_t t = 0; t < schedule.slots.size(); ++t) {
        out << (t == 0 ? "\n    [" : ",\n    [");
        const auto& slot = schedule.slots[t];
        for (std::size_t k = 0; k < slot.size(); ++k) {
            const auto& a = slot[k];
            out << (k == 0 ? "" : ", ") << "{\"chain\": " << a.chain + 1 << ", \"task\": " << a.task + 1
                << ", \"procs\": " << a.procs << '}';
        }
        out << ']';
    }
    out << (schedule.slots.empty() ? "]" : "\n  ]");
    if (m) {
        out << ",\n  \"metrics\": {\"makespan\": " << m->makespan << ", \"total_waste\": " << m->total_waste
            << ", \"avg_waste\": " << fixed6(m->avg_waste) << ", \"lower_bound\": " << m->lower_bound
            << ", \"ratio\": " << fixed6(m->ratio) << '}';
    }
    out << "\n}\n";
    return out.str();
}

Schedule read_schedule(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("schedule document must be a JSON object");
    auto it = doc.find("slots");
    if (it == doc.end()) throw ParseError("missing field \"slots\"");
    if (!it->is_array()) throw ParseError("field \"slots\" must be a list");

    Schedule schedule;
    for (std::size_t t = 0; t < it->size(); ++t) {
        const auto& slot = (*it)[t];
        const std::string path = "slots[" + std::to_string(t) + "]";
        if (!slot.is_array()) throw ParseError("field \"" + path + "\" must be a list");
        Slot parsed;
        for (std::size_t k = 0; k < slot.size(); ++k) {
            const auto& entry = slot[k];
            const std::string epath = path + "[" + std::to_string(k) + "]";
            if (!entry.is_object()) throw ParseError("field \"" + epath + "\" must be an object");
            auto get = [&](const char* name) {
                auto f = entry.find(name);
                if (f == entry.end()) throw ParseError("missing field \"" + epath + "." + name + "\"");
                if (!f->is_number_integer())
                    throw ParseError("field \"" + epath + "." + name + "\" must be an integer");
                return static_cast<int>(f->get<std::int64_t>());
            };
            parsed.push_back({get("chain") - 1, get("task") - 1, get("procs")});
        }
        schedule.slots.push_back(std::move(parsed));
    }
    return schedule;
}

}  // namespace chainsched
