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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chainsched {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. The message carries the offending field path
/// or the line/column reported by the parser.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A system (or schedule) that breaks a model invariant was handed to an
/// operation that requires a valid one.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An application: a chain of unit-time tasks. Each entry is the number of
/// processors the task needs during its single time slot. Task j+1 may not
/// start before task j has received all of its processors.
struct Chain {
    std::vector<int> tasks;

    std::size_t length() const { return tasks.size(); }
    int operator[](std::size_t j) const { return tasks[j]; }

    friend bool operator==(const Chain&, const Chain&) = default;
};

enum class ChainClass { Uniform, NonIncreasing, NonDecreasing, Arbitrary };

std::string_view to_string(ChainClass c);
/// Accepts the lowercase CLI spelling ("uniform", "nonincreasing", ...).
std::optional<ChainClass> parse_chain_class(std::string_view name);

/// M identical processors and N chains. In splitable mode a task's processors
/// may be delivered in integer pieces over several slots.
struct TaskSystem {
    int processors = 0;
    std::vector<Chain> chains;
    bool splitable = false;

    std::int64_t total_work() const;
    std::size_t longest_chain() const;
    std::size_t task_count() const;

    friend bool operator==(const TaskSystem&, const TaskSystem&) = default;
};

enum class SystemRule {
    NoProcessors,      // M < 1
    NoChains,          // N < 1
    EmptyChain,        // n_i < 1
    RequirementTooSmall,  // p_ij < 1
    RequirementExceedsM,  // p_ij > M
};

std::string_view to_string(SystemRule rule);

struct SystemViolation {
    SystemRule rule;
    std::optional<std::size_t> chain;
    std::optional<std::size_t> task;
    std::string message;
};

struct ValidationReport {
    std::vector<SystemViolation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_system(const TaskSystem& system);

/// Throws InvalidInput naming the first violation.
void require_valid(const TaskSystem& system);

/// Most specific class; a constant chain (including a single task) is Uniform.
ChainClass classify_chain(const Chain& chain);

/// Class shared by every chain, or Arbitrary if they differ. A mix of uniform
/// and non-increasing chains is NonIncreasing (uniform chains are both).
ChainClass classify_system(const TaskSystem& system);

struct GeneratorConfig {
    std::uint64_t seed = 0;
    int num_chains = 1;
    int processors = 1;
    ChainClass chain_class = ChainClass::Arbitrary;
    int min_len = 1;
    int max_len = 1;
    int min_req = 1;
    int max_req = 1;
    /// 0 draws lengths uniformly from [min_len, max_len]. A positive value v
    /// draws them from [ceil(b(1-v)), floor(b(1+v))] around the midpoint b.
    double phase_variation = 0.0;
    bool splitable = false;
};

/// Throws InvalidInput when the config cannot produce a valid system.
void require_valid(const GeneratorConfig& config);

/// Deterministic in the config. Randomness comes from std::mt19937_64 seeded
/// with config.seed; bounded integers use rejection sampling on the raw
/// 64-bit output (see uniform_int), so fixtures are portable.
TaskSystem generate(const GeneratorConfig& config);

/// Uniform integer in [lo, hi] from one or more raw mt19937_64 draws:
/// values below (2^64 mod span) are rejected, the rest reduced modulo span.
template <class Engine>
std::int64_t uniform_int(Engine& engine, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine());
    const std::uint64_t threshold = (0 - span) % span;
    for (;;) {
        const std::uint64_t x = engine();
        if (x >= threshold) return lo + static_cast<std::int64_t>(x % span);
    }
}

/// Instance format: a JSON object with `processors`, `splitable` and
/// `chains`. Only the document structure is checked here; model invariants
/// are left to validate_system so that invalid instances can be reported.
TaskSystem read_system(std::string_view text);
/// Canonical form: fields in the order processors, splitable, chains; one
/// chain per line.
std::string write_system(const TaskSystem& system);

TaskSystem load_system(const std::string& path);
void save_system(const TaskSystem& system, const std::string& path);

/// Whole-file helpers shared by the loaders.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace chainsched
