// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include <doctest.h>

#include "fdsim/config.hpp"
#include "fdsim/engine.hpp"

using namespace fdsim;

namespace {

RunConfig small(std::vector<std::string> extra = {})
{
    std::vector<std::string> o = {"scenario=outdoor_uniform", "layout.bs_per_area=1", "layout.dl_ues_per_bs=2",
                                  "layout.ul_ues_per_bs=2", "drops=1", "ttis=400", "workers=1"};
    o.insert(o.end(), extra.begin(), extra.end());
    return load_config("", o);
}

}  // namespace

TEST_CASE("reports are bit-identical for a fixed seed")
{
    const auto cfg = small({"modes=[\"fd\",\"fdd\",\"flexible\"]", "seed=5"});
    const auto a = compare_modes(cfg);
    const auto b = compare_modes(cfg);
    REQUIRE(a.modes.size() == b.modes.size());
    for (std::size_t m = 0; m < a.modes.size(); ++m) {
        CHECK(a.modes[m].dl_tput_bps == b.modes[m].dl_tput_bps);
        CHECK(a.modes[m].ul_tput_bps == b.modes[m].ul_tput_bps);
        CHECK(a.modes[m].acks == b.modes[m].acks);
    }
    REQUIRE(a.gains.size() == b.gains.size());
    for (std::size_t i = 0; i < a.gains.size(); ++i) CHECK(a.gains[i].gain == b.gains[i].gain);

    auto other = cfg;
    other.seed = 6;
    CHECK(compare_modes(other).modes[0].dl_tput_bps != a.modes[0].dl_tput_bps);
}

TEST_CASE("without cross links full duplex doubles FDD")
{
    const auto cfg = small({"cross_links=false", "ttis=1500"});
    const auto r = compare_modes(cfg);
    for (Direction d : {Direction::Downlink, Direction::Uplink}) {
        const auto g = r.gain(DuplexMode::FullDuplex, d, "mean");
        REQUIRE(g.has_value());
        CHECK(*g == doctest::Approx(2.0).epsilon(0.025));
    }
}

TEST_CASE("FDD results do not depend on cross-direction gains")
{
    const auto on = small({"modes=[\"fdd\",\"fd\"]"});
    auto off = on;
    off.cross_links = false;
    const auto a = compare_modes(on);
    const auto b = compare_modes(off);
    const auto* fa = a.find(DuplexMode::Fdd);
    const auto* fb = b.find(DuplexMode::Fdd);
    REQUIRE((fa && fb));
    CHECK(fa->dl_tput_bps == fb->dl_tput_bps);
    CHECK(fa->ul_tput_bps == fb->ul_tput_bps);
}

TEST_CASE("bursty runs conserve bits in every mode")
{
    const auto cfg = small({"traffic.model=ftp3", "traffic.dl_load_bps=20e6", "traffic.ul_load_bps=10e6",
                            "modes=[\"fd\",\"fdd\",\"flexible\"]", "ttis=800"});
    const auto setup = prepare_drop(cfg, 0);
    for (DuplexMode m : cfg.modes) {
        const auto r = run_drop(cfg, setup, m);
        CHECK(r.arrived_bits > 0);
        CHECK(r.arrived_bits == r.served_bits + r.queued_bits + r.in_flight_bits);
        for (const auto& b : r.bursts)
            if (b.completion_tti) CHECK(*b.completion_tti > b.arrival_tti);
    }
}

TEST_CASE("boost applies to full duplex only")
{
    const auto cfg = small({"power.boost_db=10"});
    const auto setup = prepare_drop(cfg, 0);
    CHECK(run_drop(cfg, setup, DuplexMode::FullDuplex).boost_db == 10.0);
    CHECK(run_drop(cfg, setup, DuplexMode::Fdd).boost_db == 0.0);
}

TEST_CASE("pair feedback overhead is reported")
{
    const auto r = compare_modes(small({"ttis=50"}));
    CHECK(r.pair_feedback_overhead > 0.0);
    CHECK(r.pair_feedback_overhead < 0.02);
}
