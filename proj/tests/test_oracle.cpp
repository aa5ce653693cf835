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

#include <doctest.h>

#include "chainsched/algorithms.hpp"
#include "chainsched/oracle.hpp"
#include "support.hpp"

using namespace chainsched;
using chainsched::testing::make_system;

TEST_CASE("optimal_makespan small cases") {
    CHECK(oracle::optimal_makespan(testing::uniform_16proc(true)).makespan == 8);
    CHECK(oracle::optimal_makespan(make_system(4, {{3, 3}}, true)).makespan == 2);
    CHECK(oracle::optimal_makespan(make_system(4, {{3, 3}}, false)).makespan == 2);
    CHECK(oracle::optimal_makespan(make_system(4, {{3}, {3}}, false)).makespan == 2);
    CHECK(oracle::optimal_makespan(make_system(4, {{3}, {3}}, true)).makespan == 2);
    CHECK(oracle::optimal_makespan(make_system(16, {{8, 8}, {9}}, true)).makespan == 2);
}

TEST_CASE("optimal_schedule witnesses") {
    SUBCASE("16-processor uniform system") {
        auto sys = testing::uniform_16proc(true);
        auto r = oracle::optimal_schedule(sys);
        REQUIRE(r.ok());
        CHECK(check_schedule(sys, *r.schedule).ok());
        CHECK(r.schedule->makespan() == 8);
    }
    SUBCASE("forced schedule") {
        auto r = oracle::optimal_schedule(make_system(2, {{2, 2, 2}}, false));
        REQUIRE(r.ok());
        CHECK(*r.schedule == Schedule{{{{0, 0, 2}}, {{0, 1, 2}}, {{0, 2, 2}}}});
    }
    SUBCASE("witness consistency over random systems") {
        for (std::uint64_t seed = 0; seed < 150; ++seed) {
            auto sys = testing::small_system(seed, static_cast<ChainClass>(seed % 4), seed % 2 == 0);
            auto opt = oracle::optimal_makespan(sys);
            auto wit = oracle::optimal_schedule(sys);
            REQUIRE(opt.ok());
            REQUIRE(wit.ok());
            REQUIRE(check_schedule(sys, *wit.schedule).ok());
            REQUIRE(metrics(sys, *wit.schedule).makespan == opt.makespan);
        }
    }
}

TEST_CASE("no-idle search agrees with unrestricted enumeration on micro instances") {
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        for (bool split : {false, true}) {
            auto sys = testing::small_system(seed, static_cast<ChainClass>(seed % 4), split, 2, 2, 4);
            const int brute = testing::brute_force_makespan(sys);
            REQUIRE(oracle::optimal_makespan(sys).makespan == brute);
            REQUIRE(oracle::optimal_makespan(sys, {oracle::kDefaultBudget, true}).makespan == brute);
        }
    }
}

TEST_CASE("agrees with brute force on slightly larger instances") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        for (bool split : {false, true}) {
            auto sys = testing::small_system(seed + 1000, ChainClass::Arbitrary, split, 3, 3, 5);
            REQUIRE(oracle::optimal_makespan(sys).makespan == testing::brute_force_makespan(sys));
        }
    }
}

TEST_CASE("oracle invariants") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto cls = static_cast<ChainClass>(seed % 4);
        auto whole = testing::small_system(seed, cls, false);
        auto split = whole;
        split.splitable = true;

        const auto opt_whole = oracle::optimal_makespan(whole);
        const auto opt_split = oracle::optimal_makespan(split);
        REQUIRE(opt_whole.ok());
        REQUIRE(opt_split.ok());
        REQUIRE(opt_whole.makespan >= lower_bound(whole));
        REQUIRE(opt_split.makespan >= lower_bound(split));
        REQUIRE(opt_split.makespan <= opt_whole.makespan);
        for (auto a : kAllAlgorithms) {
            REQUIRE(schedule(whole, a).makespan() >= opt_whole.makespan);
            if (a != Algorithm::Lcf) REQUIRE(schedule(split, a).makespan() >= opt_split.makespan);
        }
        // Running a schedule backwards in time is a schedule of the reversed
        // chains, so the optimum cannot change.
        REQUIRE(oracle::optimal_makespan(testing::reversed(whole)).makespan == opt_whole.makespan);
        REQUIRE(oracle::optimal_makespan(testing::reversed(split)).makespan == opt_split.makespan);
    }
}

TEST_CASE("budget exhaustion is reported distinctly") {
    auto sys = make_system(8, {{3, 5, 2}, {4, 4}, {6, 1, 7}}, true);
    auto r = oracle::optimal_makespan(sys, {1, false});
    CHECK(r.status == oracle::Status::BudgetExceeded);
    CHECK_FALSE(r.ok());
    auto w = oracle::optimal_schedule(sys, {1, false});
    CHECK_FALSE(w.ok());
    CHECK_FALSE(w.schedule.has_value());
}

TEST_CASE("rejects invalid systems") {
    CHECK_THROWS_AS(oracle::optimal_makespan(make_system(2, {{3}}, false)), InvalidInput);
}
