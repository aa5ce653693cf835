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

// chainsched: command-line front end for generating chain systems, running the
// list schedulers and the exact oracle, and sweeping experiments.
//
// Exit codes: 0 success, 1 the input was checked and found invalid, 2 usage
// or runtime error, 3 oracle budget exceeded.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chainsched/algorithms.hpp"
#include "chainsched/experiments.hpp"
#include "chainsched/oracle.hpp"
#include "chainsched/schedule.hpp"
#include "chainsched/workload.hpp"

namespace cs = chainsched;

namespace {

int print_system_report(const cs::ValidationReport& report) {
    if (report.ok()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const auto& v : report.violations) std::cout << "violation: " << cs::to_string(v.rule) << ": " << v.message << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schedule chains of unit-time multiprocessor tasks"};
    app.require_subcommand(1);
    int status = 0;

    // generate
    cs::GeneratorConfig gen;
    std::string gen_class = "arbitrary";
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Generate a random task system");
    generate->add_option("--seed", gen.seed, "Random seed")->required();
    generate->add_option("--chains", gen.num_chains, "Number of chains")->required();
    generate->add_option("--processors", gen.processors, "Number of processors M")->required();
    generate->add_option("--class", gen_class, "uniform|nonincreasing|nondecreasing|arbitrary")
        ->check(CLI::IsMember({"uniform", "nonincreasing", "nondecreasing", "arbitrary"}));
    generate->add_option("--len-min", gen.min_len, "Minimum chain length")->required();
    generate->add_option("--len-max", gen.max_len, "Maximum chain length")->required();
    generate->add_option("--req-min", gen.min_req, "Minimum processor requirement")->required();
    generate->add_option("--req-max", gen.max_req, "Maximum processor requirement")->required();
    generate->add_option("--phase-variation", gen.phase_variation, "Chain length variation in [0,1]");
    generate->add_flag("--splitable", gen.splitable, "Mark tasks as splitable");
    generate->add_option("-o,--output", gen_out, "Output instance file")->required();
    generate->callback([&] {
        gen.chain_class = *cs::parse_chain_class(gen_class);
        cs::save_system(cs::generate(gen), gen_out);
    });

    // validate
    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "Check a task system against the model rules");
    validate->add_option("file", validate_file, "Instance file")->required();
    validate->callback([&] { status = print_system_report(cs::validate_system(cs::load_system(validate_file))); });

    // lb
    std::string lb_file;
    auto* lb = app.add_subcommand("lb", "Print the makespan lower bound");
    lb->add_option("file", lb_file, "Instance file")->required();
    lb->callback([&] {
        auto system = cs::load_system(lb_file);
        cs::require_valid(system);
        std::cout << cs::lower_bound(system) << '\n';
    });

    // schedule
    std::string sched_system, sched_algo, sched_out;
    bool sched_metrics = false;
    auto* sched = app.add_subcommand("schedule", "Run one scheduling algorithm");
    sched->add_option("--system", sched_system, "Instance file")->required();
    sched->add_option("--algo", sched_algo, "lcmpf|lcf|mcf|lcmcf")
        ->required()
        ->check(CLI::IsMember({"lcmpf", "lcf", "mcf", "lcmcf"}));
    sched->add_option("-o,--output", sched_out, "Output schedule file")->required();
    sched->add_flag("--metrics", sched_metrics, "Append a metrics block");
    sched->callback([&] {
        auto system = cs::load_system(sched_system);
        auto s = cs::schedule(system, sched_algo);
        std::optional<cs::ScheduleMetrics> m;
        if (sched_metrics) m = cs::metrics(system, s);
        cs::write_file(sched_out, cs::write_schedule(s, m));
    });

    // validate-schedule
    std::string vs_system, vs_schedule;
    auto* vs = app.add_subcommand("validate-schedule", "Check a schedule against a task system");
    vs->add_option("--system", vs_system, "Instance file")->required();
    vs->add_option("--schedule", vs_schedule, "Schedule file")->required();
    vs->callback([&] {
        auto system = cs::load_system(vs_system);
        auto s = cs::read_schedule(cs::read_file(vs_schedule));
        auto report = cs::check_schedule(system, s);
        if (!report.ok()) {
            for (const auto& v : report.violations)
                std::cout << "violation: " << cs::to_string(v.rule) << ": " << v.message << '\n';
            status = 1;
            return;
        }
        std::cout << "ok\n";
        auto m = cs::metrics(system, s);
        std::printf("makespan %lld\ntotal_waste %lld\navg_waste %.6f\nlower_bound %lld\nratio %.6f\n",
                    static_cast<long long>(m.makespan), static_cast<long long>(m.total_waste), m.avg_waste,
                    static_cast<long long>(m.lower_bound), m.ratio);
    });

    // oracle
    std::string oracle_system, oracle_out;
    std::size_t oracle_budget = cs::oracle::kDefaultBudget;
    auto* orc = app.add_subcommand("oracle", "Compute the optimal makespan by exhaustive search");
    orc->add_option("--system", oracle_system, "Instance file")->required();
    orc->add_option("--budget", oracle_budget, "Maximum search states")->check(CLI::PositiveNumber);
    orc->add_option("-o,--output", oracle_out, "Also write an optimal schedule here");
    orc->callback([&] {
        auto system = cs::load_system(oracle_system);
        const cs::oracle::Options options{oracle_budget, false};
        if (oracle_out.empty()) {
            auto r = cs::oracle::optimal_makespan(system, options);
            if (!r.ok()) {
                std::cout << "budget exceeded after " << r.states << " states\n";
                status = 3;
                return;
            }
            std::cout << r.makespan << '\n';
        } else {
            auto r = cs::oracle::optimal_schedule(system, options);
            if (!r.ok()) {
                std::cout << "budget exceeded after " << r.states << " states\n";
                status = 3;
                return;
            }
            cs::write_file(oracle_out, cs::write_schedule(*r.schedule, cs::metrics(system, *r.schedule)));
            std::cout << r.schedule->makespan() << '\n';
        }
    });

    // compare
    std::string cmp_spec, cmp_out;
    bool cmp_oracle = false, cmp_timing = false;
    unsigned cmp_threads = 1;
    auto* cmp = app.add_subcommand("compare", "Run an experiment sweep and write a CSV table");
    cmp->add_option("--spec", cmp_spec, "Experiment spec file")->required();
    cmp->add_option("-o,--output", cmp_out, "Output CSV")->required();
    cmp->add_flag("--with-oracle", cmp_oracle, "Add the exact optimum per instance");
    cmp->add_option("--threads", cmp_threads, "Worker threads (0 = all cores)");
    cmp->add_flag("--timing", cmp_timing, "Fill the wall_time_ms column (output is then not reproducible)");
    cmp->callback([&] {
        auto spec = cs::read_experiment_spec(cs::read_file(cmp_spec));
        spec.with_oracle = cmp_oracle;
        spec.threads = cmp_threads;
        auto result = cs::run_experiment(spec);
        cs::write_file(cmp_out, cs::write_csv(result, cmp_timing));
        std::cout << cs::write_summary(result);
    });

    // dominance
    std::string dom_spec, dom_dir;
    int dom_attempts = 10000;
    auto* dom = app.add_subcommand("dominance", "Search for instances where one heuristic beats another");
    dom->add_option("--spec", dom_spec, "Experiment spec file (generator, algorithms, seed_base)")->required();
    dom->add_option("--attempts", dom_attempts, "Maximum instances to try")->check(CLI::PositiveNumber);
    dom->add_option("--out-dir", dom_dir, "Directory for one instance file per found pair")->required();
    dom->callback([&] {
        auto spec = cs::read_experiment_spec(cs::read_file(dom_spec));
        auto cases = cs::dominance_search(spec.generator, spec.algorithms, spec.seed_base, dom_attempts);
        std::filesystem::create_directories(dom_dir);
        std::ostringstream index;
        index << "winner,loser,seed,file";
        for (auto a : spec.algorithms) index << ',' << cs::to_string(a);
        index << '\n';
        for (const auto& c : cases) {
            const std::string file =
                std::string(cs::to_string(c.winner)) + "_beats_" + std::string(cs::to_string(c.loser)) + ".json";
            cs::save_system(c.system, (std::filesystem::path(dom_dir) / file).string());
            index << cs::to_string(c.winner) << ',' << cs::to_string(c.loser) << ',' << c.seed << ',' << file;
            for (const auto& [a, m] : c.makespans) index << ',' << m;
            index << '\n';
        }
        cs::write_file((std::filesystem::path(dom_dir) / "index.csv").string(), index.str());
        std::cout << index.str();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const cs::Error& e) {
        std::cerr << "chainsched: error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "chainsched: error: " << e.what() << '\n';
        return 2;
    }
    return status;
}
