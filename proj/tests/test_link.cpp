// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include <doctest.h>

#include <cmath>
#include <random>

#include "fdsim/link.hpp"
#include "oracles.hpp"

using namespace fdsim;

namespace {

const McsTable& table()
{
    static const McsTable t = McsTable::from_cqi(CqiTable::lte());
    return t;
}

}  // namespace

TEST_CASE("MCS m sits on CQI m+1 with 10% BLER at its threshold")
{
    const auto cqi = CqiTable::lte();
    REQUIRE(table().size() == cqi.max_cqi());
    for (int m = 0; m < table().size(); ++m) {
        CHECK(table().at(m).spectral_efficiency == cqi.efficiency(m + 1));
        CHECK(bler(m, table().at(m).sinr_10pct_db, table()) == doctest::Approx(0.10));
        CHECK(bler(m, table().at(m).sinr_50pct_db, table()) == doctest::Approx(0.5));
        CHECK(mcs_for_cqi(m + 1) == m);
    }
    CHECK(bler(5, 40.0, table()) < 1e-6);
    CHECK(bler(5, -40.0, table()) > 1.0 - 1e-6);
    CHECK_THROWS_AS(McsTable::from_cqi(CqiTable::lte(), 0.0), ConfigError);
}

TEST_CASE("select_mcs equals a linear scan over the table")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> s(-15.0, 35.0);
    for (int i = 0; i < 20000; ++i) {
        const double x = s(rng);
        CHECK(select_mcs(x, table()) == oracle::mcs_linear_scan(x, table()));
    }
    for (int m = 0; m < table().size(); ++m) {
        const double x = table().at(m).sinr_10pct_db;
        CHECK(select_mcs(x, table()) == oracle::mcs_linear_scan(x, table()));
        CHECK(select_mcs(x, table()) == m);
    }
}

TEST_CASE("transport block size")
{
    // 0.1523 b/s/Hz * 180 kHz * 1 ms * 12 RB * 0.75
    CHECK(tb_size(0, 12, table()) == static_cast<int>(std::floor(0.1523 * 180.0 * 12 * 0.75)));
    CHECK(tb_size(14, 100, table(), 0.0) == static_cast<int>(std::floor(5.5547 * 180.0 * 100)));
    int prev = 0;
    for (int m = 0; m < table().size(); ++m) {
        CHECK(tb_size(m, 12, table()) > prev);
        prev = tb_size(m, 12, table());
    }
    CHECK_THROWS_AS(tb_size(3, 0, table()), InvariantViolation);
}

TEST_CASE("HARQ: residual loss after chase combining matches the analytic rate")
{
    HarqConfig cfg;
    HarqBuffer buf(cfg);
    std::vector<Stream> streams(1, Stream(77));
    const int mcs = 6;
    // SINR at the 50% point of the first attempt.
    const double sinr = table().at(mcs).sinr_50pct_db;
    double p_all_fail = 1.0;
    for (int k = 0; k < cfg.max_transmissions; ++k) p_all_fail *= bler(mcs, sinr + cfg.combining_gain_db * k, table());

    const int n = 40000;
    std::size_t dropped = 0, acked = 0;
    Tti tti = 0;
    std::vector<HarqProcess> fresh;
    for (int i = 0; i < n; ++i) fresh.push_back({static_cast<NodeId>(i), 0, 0, Direction::Downlink, mcs, 12, 100});
    auto active = fresh;
    while (!active.empty()) {
        std::vector<double> s(active.size(), sinr);
        for (auto& p : active) p.due_tti = tti;
        auto r = harq_step(active, s, buf, streams, table(), tti);
        acked += r.acked.size();
        dropped += r.dropped.size();
        for (const auto& p : r.dropped) CHECK(p.transmissions == cfg.max_transmissions);
        tti += cfg.rtt_tti;
        active = buf.take_due(tti);
    }
    CHECK(acked + dropped == static_cast<std::size_t>(n));
    CHECK(buf.size() == 0);
    const double rate = static_cast<double>(dropped) / n;
    const double sigma = std::sqrt(p_all_fail * (1.0 - p_all_fail) / n);
    CHECK(std::abs(rate - p_all_fail) < 5.0 * sigma + 1e-4);
}

TEST_CASE("HARQ buffer returns due processes in (cell, subband, direction) order")
{
    HarqBuffer buf;
    buf.hold({1, 2, 3, Direction::Uplink, 0, 12, 50, 0.0, 1, 10});
    buf.hold({2, 1, 5, Direction::Downlink, 0, 12, 60, 0.0, 1, 10});
    buf.hold({3, 2, 3, Direction::Downlink, 0, 12, 70, 0.0, 1, 10});
    buf.hold({1, 2, 0, Direction::Downlink, 0, 12, 80, 0.0, 1, 11});
    CHECK(buf.pending_bits(1) == 130);
    const auto due = buf.take_due(10);
    REQUIRE(due.size() == 3);
    CHECK(due[0].ue == 2);
    CHECK(due[1].ue == 3);
    CHECK(due[2].ue == 1);
    CHECK(buf.size() == 1);
    CHECK(buf.take_due(10).empty());
}

TEST_CASE("HARQ config validation")
{
    HarqConfig c;
    c.max_transmissions = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = HarqConfig{};
    c.combining_gain_db = -1.0;
    CHECK_THROWS_AS(HarqBuffer{c}, ConfigError);
}
