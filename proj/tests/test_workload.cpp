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

#include <random>

#include "chainsched/workload.hpp"
#include "support.hpp"

using namespace chainsched;
using chainsched::testing::make_system;

TEST_CASE("validate_system") {
    SUBCASE("four uniform chains on 16 processors are valid") {
        CHECK(validate_system(testing::uniform_16proc(true)).ok());
        CHECK(validate_system(testing::uniform_16proc(false)).ok());
    }
    SUBCASE("requirement above M") {
        auto r = validate_system(make_system(4, {{5}}, false));
        REQUIRE(r.violations.size() == 1);
        CHECK(r.violations[0].rule == SystemRule::RequirementExceedsM);
        CHECK(r.violations[0].chain == 0u);
        CHECK(r.violations[0].task == 0u);
    }
    SUBCASE("empty chain") {
        auto r = validate_system(make_system(4, {{}}, false));
        REQUIRE(r.violations.size() == 1);
        CHECK(r.violations[0].rule == SystemRule::EmptyChain);
        CHECK(r.violations[0].chain == 0u);
    }
    SUBCASE("single-processor tasks are accepted") {
        CHECK(validate_system(make_system(4, {{1, 1, 1}}, false)).ok());
    }
    SUBCASE("zero requirement, no chains, no processors") {
        CHECK(validate_system(make_system(4, {{2, 0}}, true)).violations.at(0).rule ==
              SystemRule::RequirementTooSmall);
        CHECK(validate_system(make_system(4, {}, true)).violations.at(0).rule == SystemRule::NoChains);
        CHECK(validate_system(make_system(0, {{1}}, true)).violations.at(0).rule == SystemRule::NoProcessors);
    }
    SUBCASE("every violation is reported") {
        auto r = validate_system(make_system(3, {{4, 1}, {}, {0, 9}}, false));
        CHECK(r.violations.size() == 4);
    }
}

TEST_CASE("classify_chain") {
    CHECK(classify_chain({{6, 6, 6}}) == ChainClass::Uniform);
    CHECK(classify_chain({{7}}) == ChainClass::Uniform);
    CHECK(classify_chain({{9, 7, 7, 2}}) == ChainClass::NonIncreasing);
    CHECK(classify_chain({{1, 3, 3, 8}}) == ChainClass::NonDecreasing);
    CHECK(classify_chain({{3, 8, 2}}) == ChainClass::Arbitrary);
}

TEST_CASE("classify_system mixes uniform with one monotone direction") {
    CHECK(classify_system(make_system(9, {{4, 4}, {9, 2}}, false)) == ChainClass::NonIncreasing);
    CHECK(classify_system(make_system(9, {{4, 4}, {2, 9}}, false)) == ChainClass::NonDecreasing);
    CHECK(classify_system(make_system(9, {{9, 2}, {2, 9}}, false)) == ChainClass::Arbitrary);
}

TEST_CASE("uniform_int stays in range and hits both ends") {
    std::mt19937_64 engine(42);
    bool lo = false, hi = false;
    for (int i = 0; i < 2000; ++i) {
        auto v = uniform_int(engine, 3, 7);
        REQUIRE(v >= 3);
        REQUIRE(v <= 7);
        lo = lo || v == 3;
        hi = hi || v == 7;
    }
    CHECK(lo);
    CHECK(hi);
}

TEST_CASE("generate") {
    GeneratorConfig c;
    c.seed = 1;
    c.num_chains = 5;
    c.processors = 20;
    c.chain_class = ChainClass::Arbitrary;
    c.min_len = 3;
    c.max_len = 6;
    c.min_req = 1;
    c.max_req = 10;

    SUBCASE("seed 1 matches the frozen fixture") {
        CHECK(generate(c) == load_system(testing::fixture("arbitrary_seed1.json")));
    }
    SUBCASE("same config, same system") { CHECK(generate(c) == generate(c)); }
    SUBCASE("different seeds differ") {
        auto d = c;
        d.seed = 2;
        CHECK_FALSE(generate(c) == generate(d));
    }
    SUBCASE("rejects impossible configs") {
        auto bad = c;
        bad.max_req = 21;
        CHECK_THROWS_AS(generate(bad), InvalidInput);
        bad = c;
        bad.min_len = 0;
        CHECK_THROWS_AS(generate(bad), InvalidInput);
        bad = c;
        bad.phase_variation = 1.5;
        CHECK_THROWS_AS(generate(bad), InvalidInput);
    }
    SUBCASE("phase variation draws around the midpoint") {
        auto v = c;
        v.min_len = 10;
        v.max_len = 30;  // midpoint 20
        v.phase_variation = 0.1;
        v.num_chains = 200;
        auto s = generate(v);
        for (const auto& chain : s.chains) {
            CHECK(chain.length() >= 18);
            CHECK(chain.length() <= 22);
        }
    }
}

TEST_CASE("generated systems are valid and of the requested class") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto cls = static_cast<ChainClass>(seed % 4);
        std::mt19937_64 e(seed);
        GeneratorConfig c;
        c.seed = seed;
        c.num_chains = static_cast<int>(uniform_int(e, 1, 12));
        c.processors = static_cast<int>(uniform_int(e, 1, 64));
        c.chain_class = cls;
        c.min_len = static_cast<int>(uniform_int(e, 1, 5));
        c.max_len = c.min_len + static_cast<int>(uniform_int(e, 0, 6));
        c.min_req = static_cast<int>(uniform_int(e, 1, c.processors));
        c.max_req = static_cast<int>(uniform_int(e, c.min_req, c.processors));
        c.phase_variation = static_cast<double>(uniform_int(e, 0, 10)) / 10.0;
        c.splitable = seed % 2 == 0;
        const auto s = generate(c);
        REQUIRE(validate_system(s).ok());
        REQUIRE(s.chains.size() == static_cast<std::size_t>(c.num_chains));
        if (cls != ChainClass::Arbitrary) {
            for (const auto& chain : s.chains) {
                const auto got = classify_chain(chain);
                // Uniform chains satisfy either monotone class too.
                const bool ok = got == cls || (got == ChainClass::Uniform && cls != ChainClass::Arbitrary);
                REQUIRE(ok);
                if (cls == ChainClass::Uniform) REQUIRE(got == ChainClass::Uniform);
            }
        }
        REQUIRE(read_system(write_system(s)) == s);
    }
}

TEST_CASE("instance format") {
    SUBCASE("reads the 16-processor document") {
        auto s = read_system(R"({"processors":16,"splitable":true,
            "chains":[[8,8,8,8],[4,4,4],[6,6,6,6,6],[10,10,10,10]]})");
        CHECK(s == testing::uniform_16proc(true));
    }
    SUBCASE("canonical writer") {
        CHECK(write_system(testing::uniform_16proc(true)) == read_file(testing::fixture("uniform_16proc.json")));
    }
    SUBCASE("write(read(d)) is the canonical form of d") {
        const std::string messy = R"({ "chains": [[3,1],[2]], "splitable": false, "processors": 4 })";
        CHECK(write_system(read_system(messy)) ==
              "{\n  \"processors\": 4,\n  \"splitable\": false,\n  \"chains\": [\n    [3, 1],\n    [2]\n  ]\n}\n");
    }
    SUBCASE("missing processors names the field") {
        try {
            read_system(R"({"splitable":true,"chains":[[1]]})");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("processors") != std::string::npos);
        }
    }
    SUBCASE("wrong types name the field path") {
        try {
            read_system(R"({"processors":4,"splitable":true,"chains":[[1],[2,"x"]]})");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("chains[1][1]") != std::string::npos);
        }
        CHECK_THROWS_AS(read_system(R"({"processors":4,"splitable":1,"chains":[]})"), ParseError);
    }
    SUBCASE("syntax errors carry a location") {
        try {
            read_system("{\n  \"processors\": 4,\n  oops\n}");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("structurally fine but invalid systems still load") {
        auto s = read_system(R"({"processors":4,"splitable":false,"chains":[[5]]})");
        CHECK_FALSE(validate_system(s).ok());
    }
}
