// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include <doctest.h>

#include "fdsim/config.hpp"

using namespace fdsim;
using nlohmann::json;

TEST_CASE("defaults load and validate for every scenario")
{
    for (const char* s : {"indoor", "outdoor_cluster", "outdoor_uniform"}) {
        const auto cfg = from_json(json{{"scenario", s}});
        CHECK(to_string(cfg.scenario) == s);
        CHECK_NOTHROW(cfg.validate());
    }
}

TEST_CASE("unknown keys and bad types are configuration errors")
{
    CHECK_THROWS_AS(from_json(json{{"nope", 1}}), ConfigError);
    CHECK_THROWS_AS(from_json(json{{"layout", {{"nope", 1}}}}), ConfigError);
    CHECK_THROWS_AS(from_json(json{{"drops", "two"}}), ConfigError);
    CHECK_THROWS_AS(from_json(json{{"drops", 1.5}}), ConfigError);
    CHECK_THROWS_AS(from_json(json{{"drops", 0}}), ConfigError);
    CHECK_THROWS_AS(from_json(json{{"modes", {"tdd"}}}), ConfigError);
    CHECK_THROWS_AS(from_json(json{{"scenario", "moon"}}), ConfigError);
    CHECK_THROWS_AS(from_json(json{{"seed", -1}}), ConfigError);
    CHECK_THROWS_AS(from_json(json::array()), ConfigError);
}

TEST_CASE("overrides use dotted keys and JSON values")
{
    const auto [k, v] = parse_override("power.boost_db=12.5");
    CHECK(k == "power.boost_db");
    CHECK(v == json(12.5));
    CHECK(parse_override("scheduler=joint").second == json("joint"));
    CHECK(parse_override("modes=[\"fd\",\"fdd\"]").second.is_array());
    CHECK_THROWS_AS(parse_override("no_equals"), ConfigError);
    CHECK_THROWS_AS(parse_override("=3"), ConfigError);

    json j = json::object();
    apply_override(j, "a.b.c", 3);
    CHECK(j["a"]["b"]["c"] == 3);
    CHECK_THROWS_AS(apply_override(j, "a..c", 1), ConfigError);

    const auto cfg = load_config("", {"power.boost_db=7", "scheduler=joint", "drops=3", "layout.bs_per_area=2"});
    CHECK(cfg.power.boost_db == 7.0);
    CHECK(cfg.fd_scheduler == SchedulerKind::Joint);
    CHECK(cfg.drops == 3);
    CHECK(cfg.layout.bs_per_area == 2);
    CHECK_THROWS_AS(load_config("", {"layout.nonexistent=3"}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.json", {}), ConfigError);
}

TEST_CASE("to_json and from_json round-trip")
{
    auto cfg = load_config("", {"scenario=outdoor_uniform", "power.boost_db=30", "traffic.model=ftp3", "seed=99",
                                "modes=[\"fd\",\"fdd\",\"flexible\"]", "feedback.pair_mode=onebit"});
    const json a = to_json(cfg);
    const auto back = from_json(a);
    CHECK(to_json(back) == a);
    CHECK(back.scenario == ScenarioKind::OutdoorUniform);
    CHECK(back.seed == 99);
    CHECK(back.modes.size() == 3);
    CHECK(back.feedback.pair_mode.kind == PairFeedbackKind::OneBit);
    CHECK(back.traffic.kind == TrafficKind::Ftp3);
}
