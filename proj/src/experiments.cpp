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

#include "chainsched/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chainsched/schedule.hpp"

namespace chainsched {

void require_valid(const ExperimentSpec& spec) {
    require_valid(spec.generator);
    if (spec.repetitions < 1) throw InvalidInput("invalid experiment: repetitions must be at least 1");
    if (spec.algorithms.empty()) throw InvalidInput("invalid experiment: no algorithms named");
    if (spec.generator.splitable &&
        std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::Lcf) != spec.algorithms.end())
        throw ModeMismatch("lcf schedules non-splitable systems only");
}

namespace {

std::string name(Algorithm a) { return std::string(to_string(a)); }

bool row_less(const ExperimentRow& a, const ExperimentRow& b) {
    if (a.instance != b.instance) return a.instance < b.instance;
    return to_string(a.algorithm) < to_string(b.algorithm);
}

std::vector<ExperimentRow> run_instance(const ExperimentSpec& spec, int instance) {
    GeneratorConfig config = spec.generator;
    config.seed = spec.seed_base + static_cast<std::uint64_t>(instance);
    const auto system = generate(config);

    std::optional<std::int64_t> optimum;
    if (spec.with_oracle) {
        auto r = oracle::optimal_makespan(system, {spec.oracle_budget, false});
        if (r.ok()) optimum = r.makespan;
    }

    std::vector<ExperimentRow> rows;
    for (auto algorithm : spec.algorithms) {
        const auto begin = std::chrono::steady_clock::now();
        auto sched = schedule(system, algorithm);
        const auto end = std::chrono::steady_clock::now();

        if (auto report = check_schedule(system, sched); !report.ok())
            throw Error("invalid schedule from " + name(algorithm) + " on instance seed " +
                        std::to_string(config.seed) + ": " + report.violations.front().message);
        const auto m = metrics(system, sched);

        ExperimentRow row;
        row.instance = instance;
        row.seed = config.seed;
        row.algorithm = algorithm;
        row.makespan = m.makespan;
        row.lower_bound = m.lower_bound;
        row.ratio = m.ratio;
        row.total_waste = m.total_waste;
        row.wall_time_ms = std::chrono::duration<double, std::milli>(end - begin).count();
        row.oracle_makespan = optimum;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::vector<AlgorithmSummary> summarize(const std::vector<ExperimentRow>& input) {
    // Sum in a fixed order so floating-point totals do not depend on how the
    // caller ordered the rows.
    auto rows = input;
    std::sort(rows.begin(), rows.end(), row_less);

    std::map<std::string, AlgorithmSummary> by_name;
    std::map<std::string, double> ratio_sum, waste_sum;
    for (const auto& row : rows) {
        auto [it, fresh] = by_name.try_emplace(name(row.algorithm));
        auto& s = it->second;
        if (fresh) {
            s.algorithm = row.algorithm;
            s.min_ratio = std::numeric_limits<double>::infinity();
            s.max_ratio = -std::numeric_limits<double>::infinity();
        }
        ++s.instances;
        ratio_sum[it->first] += row.ratio;
        waste_sum[it->first] += static_cast<double>(row.total_waste);
        s.min_ratio = std::min(s.min_ratio, row.ratio);
        s.max_ratio = std::max(s.max_ratio, row.ratio);
        if (row.oracle_makespan) {
            ++s.oracle_compared;
            const auto gap = row.makespan - *row.oracle_makespan;
            if (gap == 0) ++s.oracle_hits;
            s.max_gap = std::max(s.max_gap, gap);
        }
    }

    std::vector<AlgorithmSummary> out;
    for (auto& [key, s] : by_name) {
        s.mean_ratio = ratio_sum[key] / s.instances;
        s.mean_waste = waste_sum[key] / s.instances;
        out.push_back(s);
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    require_valid(spec);

    unsigned threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.repetitions));

    std::vector<std::vector<ExperimentRow>> per_instance(static_cast<std::size_t>(spec.repetitions));
    std::atomic<int> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (int i = cursor++; i < spec.repetitions; i = cursor++) {
            try {
                per_instance[static_cast<std::size_t>(i)] = run_instance(spec, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                cursor = spec.repetitions;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    result.with_oracle = spec.with_oracle;
    for (auto& rows : per_instance) {
        if (spec.with_oracle && !rows.empty() && !rows.front().oracle_makespan) ++result.oracle_budget_exceeded;
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    std::sort(result.rows.begin(), result.rows.end(), row_less);
    result.summaries = summarize(result.rows);
    return result;
}

ExperimentResult gap_study(ExperimentSpec spec) {
    spec.with_oracle = true;
    return run_experiment(spec);
}

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

std::string write_csv(const ExperimentResult& result, bool include_timing) {
    std::ostringstream out;
    out << "instance_seed,algorithm,makespan,lower_bound,ratio,total_waste,wall_time_ms";
    if (result.with_oracle) out << ",oracle_makespan";
    out << '\n';
    for (const auto& row : result.rows) {
        out << row.seed << ',' << to_string(row.algorithm) << ',' << row.makespan << ',' << row.lower_bound << ','
            << fixed(row.ratio, 6) << ',' << row.total_waste << ',';
        if (include_timing) out << fixed(row.wall_time_ms, 3);
        if (result.with_oracle) {
            out << ',';
            if (row.oracle_makespan) out << *row.oracle_makespan;
        }
        out << '\n';
    }
    return out.str();
}

std::string write_summary(const ExperimentResult& result) {
    std::ostringstream out;
    out << "algorithm  instances  mean_ratio  min_ratio  max_ratio  mean_waste";
    if (result.with_oracle) out << "  oracle_hits  max_gap";
    out << '\n';
    for (const auto& s : result.summaries) {
        char line[160];
        std::snprintf(line, sizeof line, "%-9s  %9d  %10.6f  %9.6f  %9.6f  %10.3f", name(s.algorithm).c_str(),
                      s.instances, s.mean_ratio, s.min_ratio, s.max_ratio, s.mean_waste);
        out << line;
        if (result.with_oracle) {
            std::snprintf(line, sizeof line, "  %5d/%-5d  %7lld", s.oracle_hits, s.oracle_compared,
                          static_cast<long long>(s.max_gap));
            out << line;
        }
        out << '\n';
    }
    if (result.with_oracle && result.oracle_budget_exceeded > 0)
        out << "oracle budget exceeded on " << result.oracle_budget_exceeded << " instance(s)\n";
    return out.str();
}

namespace {

using nlohmann::json;

const json& need(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::int64_t need_int(const json& doc, const char* key) {
    const auto& v = need(doc, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

int need_int32(const json& doc, const char* key) {
    const auto v = need_int(doc, key);
    if (v < INT32_MIN || v > INT32_MAX) throw ParseError(std::string("field \"") + key + "\" is out of range");
    return static_cast<int>(v);
}

}  // namespace

ExperimentSpec read_experiment_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("experiment document must be a JSON object");

    ExperimentSpec spec;
    auto& g = spec.generator;
    g.processors = need_int32(doc, "processors");
    const auto& split = need(doc, "splitable");
    if (!split.is_boolean()) throw ParseError("field \"splitable\" must be a boolean");
    g.splitable = split.get<bool>();
    g.num_chains = need_int32(doc, "chains");

    const auto& cls = need(doc, "class");
    if (!cls.is_string()) throw ParseError("field \"class\" must be a string");
    auto parsed = parse_chain_class(cls.get<std::string>());
    if (!parsed) throw ParseError("field \"class\" must be uniform, nonincreasing, nondecreasing or arbitrary");
    g.chain_class = *parsed;

    g.min_len = need_int32(doc, "len_min");
    g.max_len = need_int32(doc, "len_max");
    g.min_req = need_int32(doc, "req_min");
    g.max_req = need_int32(doc, "req_max");
    if (auto it = doc.find("phase_variation"); it != doc.end()) {
        if (!it->is_number()) throw ParseError("field \"phase_variation\" must be a number");
        g.phase_variation = it->get<double>();
    }

    const auto& algos = need(doc, "algorithms");
    if (!algos.is_array()) throw ParseError("field \"algorithms\" must be a list of names");
    for (std::size_t k = 0; k < algos.size(); ++k) {
        const std::string path = "algorithms[" + std::to_string(k) + "]";
        if (!algos[k].is_string()) throw ParseError("field \"" + path + "\" must be a string");
        auto a = parse_algorithm(algos[k].get<std::string>());
        if (!a) throw ParseError("field \"" + path + "\" names an unknown algorithm");
        spec.algorithms.push_back(*a);
    }
    spec.repetitions = need_int32(doc, "repetitions");
    const auto base = need_int(doc, "seed_base");
    if (base < 0) throw ParseError("field \"seed_base\" must be non-negative");
    spec.seed_base = static_cast<std::uint64_t>(base);
    if (doc.contains("oracle_budget")) {
        const auto b = need_int(doc, "oracle_budget");
        if (b < 1) throw ParseError("field \"oracle_budget\" must be positive");
        spec.oracle_budget = static_cast<std::size_t>(b);
    }
    return spec;
}

std::string write_experiment_spec(const ExperimentSpec& spec) {
    const auto& g = spec.generator;
    std::ostringstream out;
    out << "{\n  \"processors\": " << g.processors << ",\n  \"splitable\": " << (g.splitable ? "true" : "false")
        << ",\n  \"chains\": " << g.num_chains << ",\n  \"class\": \"" << to_string(g.chain_class)
        << "\",\n  \"len_min\": " << g.min_len << ",\n  \"len_max\": " << g.max_len
        << ",\n  \"req_min\": " << g.min_req << ",\n  \"req_max\": " << g.max_req
        << ",\n  \"phase_variation\": " << fixed(g.phase_variation, 6) << ",\n  \"algorithms\": [";
    for (std::size_t k = 0; k < spec.algorithms.size(); ++k)
        out << (k ? ", " : "") << '"' << to_string(spec.algorithms[k]) << '"';
    out << "],\n  \"repetitions\": " << spec.repetitions << ",\n  \"seed_base\": " << spec.seed_base
        << ",\n  \"oracle_budget\": " << spec.oracle_budget << "\n}\n";
    return out.str();
}

std::vector<DominanceCase> dominance_search(const GeneratorConfig& generator,
                                            const std::vector<Algorithm>& algorithms,
                                            std::uint64_t seed_base, int max_attempts) {
    std::vector<DominanceCase> found;
    auto seen = [&](Algorithm w, Algorithm l) {
        return std::any_of(found.begin(), found.end(),
                           [&](const DominanceCase& c) { return c.winner == w && c.loser == l; });
    };
    const std::size_t pairs = algorithms.size() * (algorithms.size() - (algorithms.empty() ? 0 : 1));

    for (int k = 0; k < max_attempts && found.size() < pairs; ++k) {
        GeneratorConfig config = generator;
        config.seed = seed_base + static_cast<std::uint64_t>(k);
        auto system = generate(config);

        std::vector<std::pair<Algorithm, std::int64_t>> makespans;
        for (auto a : algorithms) makespans.emplace_back(a, schedule(system, a).makespan());

        for (const auto& [w, mw] : makespans)
            for (const auto& [l, ml] : makespans)
                if (mw < ml && !seen(w, l)) found.push_back({w, l, config.seed, system, makespans});
    }
    return found;
}

}  // namespace chainsched
