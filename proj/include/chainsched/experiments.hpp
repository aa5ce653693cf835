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

#include "chainsched/algorithms.hpp"
#include "chainsched/oracle.hpp"
#include "chainsched/workload.hpp"

namespace chainsched {

/// A batch of generated instances run through a set of algorithms. Instance i
/// is generated with seed seed_base + i; generator.seed is ignored.
struct ExperimentSpec {
    GeneratorConfig generator;
    std::vector<Algorithm> algorithms;
    int repetitions = 1;
    std::uint64_t seed_base = 0;
    bool with_oracle = false;
    std::size_t oracle_budget = oracle::kDefaultBudget;
    /// Worker threads; 0 picks the hardware concurrency. Never affects results.
    unsigned threads = 1;
};

void require_valid(const ExperimentSpec& spec);

struct ExperimentRow {
    int instance = 0;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::Lcmpf;
    std::int64_t makespan = 0;
    std::int64_t lower_bound = 0;
    double ratio = 0.0;
    std::int64_t total_waste = 0;
    double wall_time_ms = 0.0;
    /// Present when the oracle ran and finished within budget.
    std::optional<std::int64_t> oracle_makespan;
};

struct AlgorithmSummary {
    Algorithm algorithm = Algorithm::Lcmpf;
    int instances = 0;
    double mean_ratio = 0.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double mean_waste = 0.0;
    // Oracle comparison over instances the oracle solved.
    int oracle_compared = 0;
    int oracle_hits = 0;
    std::int64_t max_gap = 0;

    double hit_rate() const { return oracle_compared ? static_cast<double>(oracle_hits) / oracle_compared : 0.0; }
};

struct ExperimentResult {
    /// Sorted by (instance, algorithm name).
    std::vector<ExperimentRow> rows;
    /// Sorted by algorithm name.
    std::vector<AlgorithmSummary> summaries;
    bool with_oracle = false;
    /// Instances whose oracle search ran out of budget; excluded from the
    /// oracle statistics.
    int oracle_budget_exceeded = 0;
};

/// Every schedule is checked before its metrics are recorded; an invalid one
/// aborts the run with an Error naming the seed and algorithm.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// run_experiment with the oracle enabled.
ExperimentResult gap_study(ExperimentSpec spec);

/// Pure function of the rows; row order does not matter.
std::vector<AlgorithmSummary> summarize(const std::vector<ExperimentRow>& rows);

/// CSV with columns instance_seed, algorithm, makespan, lower_bound, ratio,
/// total_waste, wall_time_ms and, for oracle runs, oracle_makespan. Timings are
/// left blank unless include_timing is set so the file stays byte-stable.
std::string write_csv(const ExperimentResult& result, bool include_timing = false);

/// Human-readable per-algorithm table.
std::string write_summary(const ExperimentResult& result);

/// Experiment spec document: the instance fields `processors` and `splitable`
/// plus `chains` (count), `class`, `len_min`, `len_max`, `req_min`, `req_max`,
/// `phase_variation`, `algorithms`, `repetitions`, `seed_base` and optionally
/// `oracle_budget`.
ExperimentSpec read_experiment_spec(std::string_view text);
std::string write_experiment_spec(const ExperimentSpec& spec);

/// An instance on which `winner` finishes strictly before `loser`.
struct DominanceCase {
    Algorithm winner = Algorithm::Lcmpf;
    Algorithm loser = Algorithm::Lcmpf;
    std::uint64_t seed = 0;
    TaskSystem system;
    std::vector<std::pair<Algorithm, std::int64_t>> makespans;
};

/// Scans seeds seed_base, seed_base+1, ... (at most max_attempts) with the
/// given generator and records, for every ordered pair of the algorithms, the
/// first instance where the first strictly beats the second. Pairs never
/// observed are simply absent.
std::vector<DominanceCase> dominance_search(const GeneratorConfig& generator,
                                            const std::vector<Algorithm>& algorithms,
                                            std::uint64_t seed_base, int max_attempts);

}  // namespace chainsched
