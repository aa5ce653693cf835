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

#include "chainsched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace chainsched {

std::string_view to_string(ChainClass c) {
    switch (c) {
        case ChainClass::Uniform: return "uniform";
        case ChainClass::NonIncreasing: return "nonincreasing";
        case ChainClass::NonDecreasing: return "nondecreasing";
        case ChainClass::Arbitrary: return "arbitrary";
    }
    return "arbitrary";
}

std::optional<ChainClass> parse_chain_class(std::string_view name) {
    for (auto c : {ChainClass::Uniform, ChainClass::NonIncreasing, ChainClass::NonDecreasing,
                   ChainClass::Arbitrary}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

std::int64_t TaskSystem::total_work() const {
    std::int64_t sum = 0;
    for (const auto& c : chains)
        for (int p : c.tasks) sum += p;
    return sum;
}

std::size_t TaskSystem::longest_chain() const {
    std::size_t n = 0;
    for (const auto& c : chains) n = std::max(n, c.length());
    return n;
}

std::size_t TaskSystem::task_count() const {
    std::size_t n = 0;
    for (const auto& c : chains) n += c.length();
    return n;
}

std::string_view to_string(SystemRule rule) {
    switch (rule) {
        case SystemRule::NoProcessors: return "no-processors";
        case SystemRule::NoChains: return "no-chains";
        case SystemRule::EmptyChain: return "empty-chain";
        case SystemRule::RequirementTooSmall: return "requirement-below-one";
        case SystemRule::RequirementExceedsM: return "requirement-exceeds-processors";
    }
    return "unknown";
}

ValidationReport validate_system(const TaskSystem& system) {
    ValidationReport report;
    auto add = [&](SystemRule rule, std::optional<std::size_t> chain,
                   std::optional<std::size_t> task, std::string message) {
        report.violations.push_back({rule, chain, task, std::move(message)});
    };

    if (system.processors < 1)
        add(SystemRule::NoProcessors, std::nullopt, std::nullopt,
            "processors must be at least 1, got " + std::to_string(system.processors));
    if (system.chains.empty())
        add(SystemRule::NoChains, std::nullopt, std::nullopt, "system has no chains");

    for (std::size_t i = 0; i < system.chains.size(); ++i) {
        const auto& chain = system.chains[i];
        const std::string where = "chain " + std::to_string(i + 1);
        if (chain.tasks.empty()) {
            add(SystemRule::EmptyChain, i, std::nullopt, where + " is empty");
            continue;
        }
        for (std::size_t j = 0; j < chain.length(); ++j) {
            const int p = chain[j];
            const std::string task = where + " task " + std::to_string(j + 1);
            if (p < 1) {
                add(SystemRule::RequirementTooSmall, i, j,
                    task + " requires " + std::to_string(p) + " processors");
            } else if (system.processors >= 1 && p > system.processors) {
                add(SystemRule::RequirementExceedsM, i, j,
                    task + " requires " + std::to_string(p) + " processors but only " +
                        std::to_string(system.processors) + " exist");
            }
        }
    }
    return report;
}

void require_valid(const TaskSystem& system) {
    auto report = validate_system(system);
    if (!report.ok()) throw InvalidInput("invalid task system: " + report.violations.front().message);
}

ChainClass classify_chain(const Chain& chain) {
    const auto& t = chain.tasks;
    const bool non_increasing = std::is_sorted(t.begin(), t.end(), std::greater<>{});
    const bool non_decreasing = std::is_sorted(t.begin(), t.end());
    if (non_increasing && non_decreasing) return ChainClass::Uniform;
    if (non_increasing) return ChainClass::NonIncreasing;
    if (non_decreasing) return ChainClass::NonDecreasing;
    return ChainClass::Arbitrary;
}

ChainClass classify_system(const TaskSystem& system) {
    bool all_uniform = true, all_ni = true, all_nd = true;
    for (const auto& chain : system.chains) {
        const auto c = classify_chain(chain);
        all_uniform = all_uniform && c == ChainClass::Uniform;
        all_ni = all_ni && (c == ChainClass::Uniform || c == ChainClass::NonIncreasing);
        all_nd = all_nd && (c == ChainClass::Uniform || c == ChainClass::NonDecreasing);
    }
    if (all_uniform) return ChainClass::Uniform;
    if (all_ni) return ChainClass::NonIncreasing;
    if (all_nd) return ChainClass::NonDecreasing;
    return ChainClass::Arbitrary;
}

void require_valid(const GeneratorConfig& config) {
    auto fail = [](const std::string& what) { throw InvalidInput("invalid generator config: " + what); };
    if (config.num_chains < 1) fail("chain count must be at least 1");
    if (config.processors < 1) fail("processors must be at least 1");
    if (config.min_len < 1 || config.min_len > config.max_len) fail("need 1 <= len-min <= len-max");
    if (config.min_req < 1 || config.min_req > config.max_req || config.max_req > config.processors)
        fail("need 1 <= req-min <= req-max <= processors");
    if (!(config.phase_variation >= 0.0 && config.phase_variation <= 1.0))
        fail("phase variation must lie in [0, 1]");
}

namespace {

std::pair<std::int64_t, std::int64_t> length_range(const GeneratorConfig& config) {
    if (config.phase_variation <= 0.0) return {config.min_len, config.max_len};
    const double base = 0.5 * (config.min_len + config.max_len);
    auto lo = static_cast<std::int64_t>(std::ceil(base * (1.0 - config.phase_variation)));
    auto hi = static_cast<std::int64_t>(std::floor(base * (1.0 + config.phase_variation)));
    lo = std::max<std::int64_t>(lo, 1);
    hi = std::max(hi, lo);
    return {lo, hi};
}

}  // namespace

TaskSystem generate(const GeneratorConfig& config) {
    require_valid(config);
    std::mt19937_64 engine(config.seed);
    const auto [len_lo, len_hi] = length_range(config);

    TaskSystem system;
    system.processors = config.processors;
    system.splitable = config.splitable;
    system.chains.reserve(static_cast<std::size_t>(config.num_chains));
    for (int i = 0; i < config.num_chains; ++i) {
        const auto n = static_cast<std::size_t>(uniform_int(engine, len_lo, len_hi));
        Chain chain;
        chain.tasks.resize(n);
        if (config.chain_class == ChainClass::Uniform) {
            const int p = static_cast<int>(uniform_int(engine, config.min_req, config.max_req));
            std::fill(chain.tasks.begin(), chain.tasks.end(), p);
        } else {
            for (auto& p : chain.tasks)
                p = static_cast<int>(uniform_int(engine, config.min_req, config.max_req));
            if (config.chain_class == ChainClass::NonIncreasing)
                std::sort(chain.tasks.begin(), chain.tasks.end(), std::greater<>{});
            else if (config.chain_class == ChainClass::NonDecreasing)
                std::sort(chain.tasks.begin(), chain.tasks.end());
        }
        system.chains.push_back(std::move(chain));
    }
    return system;
}

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
    return *it;
}

int as_int(const json& value, const std::string& path) {
    if (!value.is_number_integer()) throw ParseError("field \"" + path + "\" must be an integer");
    const auto v = value.get<std::int64_t>();
    if (v < INT32_MIN || v > INT32_MAX) throw ParseError("field \"" + path + "\" is out of range");
    return static_cast<int>(v);
}

}  // namespace

TaskSystem read_system(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

    TaskSystem system;
    system.processors = as_int(field(doc, "processors"), "processors");

    const auto& split = field(doc, "splitable");
    if (!split.is_boolean()) throw ParseError("field \"splitable\" must be a boolean");
    system.splitable = split.get<bool>();

    const auto& chains = field(doc, "chains");
    if (!chains.is_array()) throw ParseError("field \"chains\" must be a list of lists of integers");
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const std::string path = "chains[" + std::to_string(i) + "]";
        if (!chains[i].is_array()) throw ParseError("field \"" + path + "\" must be a list of integers");
        Chain chain;
        for (std::size_t j = 0; j < chains[i].size(); ++j)
            chain.tasks.push_back(as_int(chains[i][j], path + "[" + std::to_string(j) + "]"));
        system.chains.push_back(std::move(chain));
    }
    return system;
}

std::string write_system(const TaskSystem& system) {
    std::ostringstream out;
    out << "{\n  \"processors\": " << system.processors << ",\n  \"splitable\": "
        << (system.splitable ? "true" : "false") << ",\n  \"chains\": [";
    for (std::size_t i = 0; i < system.chains.size(); ++i) {
        out << (i == 0 ? "\n    [" : ",\n    [");
        const auto& t = system.chains[i].tasks;
        for (std::size_t j = 0; j < t.size(); ++j) out << (j == 0 ? "" : ", ") << t[j];
        out << ']';
    }
    out << (system.chains.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed: " + path);
}

TaskSystem load_system(const std::string& path) {
    try {
        return read_system(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_system(const TaskSystem& system, const std::string& path) {
    write_file(path, write_system(system));
}

}  // namespace chainsched
