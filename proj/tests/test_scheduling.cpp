// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include <doctest.h>

#include <random>

#include "fdsim/scheduling.hpp"
#include "oracles.hpp"

using namespace fdsim;

namespace {

constexpr int kTtis = 100;

std::string describe(const ScheduleDecision& d)
{
    std::string s;
    for (const auto& a : d.subbands) {
        s += '[';
        s += a.dl_ue ? std::to_string(*a.dl_ue) + "/" + std::to_string(a.dl_mcs) : "-";
        s += ' ';
        s += a.ul_ue ? std::to_string(*a.ul_ue) + "/" + std::to_string(a.ul_mcs) : "-";
        s += ']';
    }
    return s;
}

}  // namespace

TEST_CASE("basic scheduler equals brute force on FD and FDD grids")
{
    std::mt19937_64 rng(100);
    for (DuplexMode mode : {DuplexMode::FullDuplex, DuplexMode::Fdd}) {
        for (int t = 0; t < kTtis; ++t) {
            oracle::RandomCell rc;
            oracle::fill_random_cell(rc, mode, rng, false);
            const auto got = schedule_basic(rc.in);
            const auto want = oracle::basic(rc.in);
            CAPTURE(describe(want));
            CHECK(describe(got) == describe(want));
            CHECK(got == want);
        }
    }
}

TEST_CASE("joint scheduler equals brute force")
{
    std::mt19937_64 rng(200);
    for (int t = 0; t < kTtis; ++t) {
        oracle::RandomCell rc;
        oracle::fill_random_cell(rc, DuplexMode::FullDuplex, rng, true);
        const auto got = schedule_joint(rc.in);
        const auto want = oracle::joint(rc.in);
        CAPTURE(describe(want));
        CHECK(describe(got) == describe(want));
        CHECK(got == want);
    }
}

TEST_CASE("flexible scheduler equals brute force and never mixes directions")
{
    std::mt19937_64 rng(300);
    for (int t = 0; t < kTtis; ++t) {
        oracle::RandomCell rc;
        oracle::fill_random_cell(rc, DuplexMode::FlexibleDuplex, rng, false);
        const auto got = schedule_flexible(rc.in);
        const auto want = oracle::flexible(rc.in);
        CAPTURE(describe(want));
        CHECK(describe(got) == describe(want));
        CHECK(got == want);
        for (const auto& a : got.subbands) CHECK_FALSE((a.dl_ue && a.ul_ue));
    }
}

TEST_CASE("schedulers never exceed a finite backlog by more than one block")
{
    std::mt19937_64 rng(400);
    for (int t = 0; t < kTtis; ++t) {
        oracle::RandomCell rc;
        oracle::fill_random_cell(rc, DuplexMode::FullDuplex, rng, true);
        for (SchedulerKind k : {SchedulerKind::Basic, SchedulerKind::Joint}) {
            const auto d = schedule(k, rc.in);
            for (std::size_t i = 0; i < rc.in.dl_ues.size(); ++i) {
                if (rc.in.dl_backlog_bits[i] > 0.0) continue;
                for (std::size_t s = 0; s < d.subbands.size(); ++s) {
                    const auto& a = d.subbands[s];
                    if (!a.dl_ue || *a.dl_ue != rc.in.dl_ues[i] || a.dl_retx) continue;
                    FAIL("empty DL queue was scheduled");
                }
            }
        }
    }
}

TEST_CASE("PF average is an exponential filter with a floor")
{
    PfState pf(3, PfConfig{100, 1e3});
    pf.set(0, 1e6);
    pf.set(1, 1e6);
    const std::vector<double> served = {0.0, 2000.0, 0.0};
    update_pf(pf, served);
    CHECK(pf.r_avg(0) == doctest::Approx(0.99e6));
    CHECK(pf.r_avg(1) == doctest::Approx(0.99e6 + 0.01 * 2e6));
    CHECK(pf.r_avg(2) == 1e3);
    CHECK(pf_metric(2e6, 1e6) == 2.0);
    CHECK(estimated_rate_bps(0, 12, CqiTable::lte()) == 0.0);
    CHECK(estimated_rate_bps(15, 10, CqiTable::lte()) == doctest::Approx(5.5547 * 10 * 180e3));
    CHECK_THROWS_AS((PfState(1, PfConfig{0, 1e3})), ConfigError);
}

TEST_CASE("scheduler names round-trip")
{
    for (SchedulerKind k : {SchedulerKind::Basic, SchedulerKind::Joint, SchedulerKind::Flexible, SchedulerKind::Fdd})
        CHECK(scheduler_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(scheduler_from_string("greedy"), ConfigError);
}
