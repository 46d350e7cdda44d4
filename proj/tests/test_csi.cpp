// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include <doctest.h>

#include <random>

#include "fdsim/csi.hpp"

using namespace fdsim;

TEST_CASE("CQI mapping is the count of thresholds at or below the SINR")
{
    const auto t = CqiTable::lte();
    CHECK_NOTHROW(t.validate());
    CHECK(t.max_cqi() == 15);
    CHECK(sinr_to_cqi(-30.0, t) == 0);
    CHECK(sinr_to_cqi(t.threshold_db(1), t) == 1);
    CHECK(sinr_to_cqi(t.threshold_db(1) - 1e-9, t) == 0);
    CHECK(sinr_to_cqi(40.0, t) == 15);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> s(-15.0, 35.0);
    for (int i = 0; i < 5000; ++i) {
        const double x = s(rng);
        int want = 0;
        for (int c = 1; c <= t.max_cqi(); ++c)
            if (t.threshold_db(c) <= x) want = c;
        CHECK(sinr_to_cqi(x, t) == want);
    }
}

TEST_CASE("CQI table validation rejects non-monotone entries")
{
    auto t = CqiTable::lte();
    std::swap(t.entries[3], t.entries[4]);
    CHECK_THROWS_AS(t.validate(), ConfigError);
    CHECK_THROWS_AS(CqiTable{}.validate(), ConfigError);
}

TEST_CASE("pair degradation quantization")
{
    PairFeedbackMode multi;
    multi.bits = 2;
    CHECK(quantize_degradation(-2, multi) == 0);
    CHECK(quantize_degradation(2, multi) == 2);
    CHECK(quantize_degradation(9, multi) == 3);

    PairFeedbackMode one;
    one.kind = PairFeedbackKind::OneBit;
    one.threshold_steps = 1;
    CHECK(quantize_degradation(0, one) == 0);
    CHECK(quantize_degradation(1, one) == 0);
    CHECK(quantize_degradation(2, one) == 1);

    PairFeedback fb;
    fb.mode = one;
    fb.ul_ues = {1};
    fb.dl_ues = {2, 3};
    fb.buckets = {0, 1};
    CHECK(fb.schedulable(0, 0));
    CHECK_FALSE(fb.schedulable(0, 1));
    CHECK(fb.bit(0, 0) == 1);
    CHECK(fb.degradation_steps(0, 0) == 0);
    CHECK(fb.degradation_steps(0, 1) == 2);

    fb.mode = multi;
    CHECK(fb.schedulable(0, 1));
    CHECK(fb.degradation_steps(0, 1) == 1);
}

TEST_CASE("pair feedback counts the CQI steps lost to the UL interferer")
{
    const auto t = CqiTable::lte();
    PairMeasurement m;
    m.cell = 4;
    m.ul_ues = {10, 11};
    m.dl_ues = {20};
    // Baseline: signal -70 dBm, SINR 20 dB, so I+N is -90 dBm.
    m.interference_dbm = {-200.0, -90.0};
    const DlBaseline base[] = {{-70.0, 20.0}};
    PairFeedbackMode mode;
    const auto fb = quantize_pair_feedback(m, base, mode, t);
    CHECK(fb.bucket(0, 0) == 0);
    // Doubling I+N costs 3 dB: 20 -> ~17 dB.
    CHECK(fb.bucket(1, 0) == sinr_to_cqi(20.0, t) - sinr_to_cqi(20.0 - 10.0 * std::log10(2.0), t));
    mode.bits = 9;
    CHECK_THROWS_AS(quantize_pair_feedback(m, base, mode, t), ConfigError);
}

TEST_CASE("CQI reports become visible exactly delay TTIs after their stamp")
{
    FeedbackConfig cfg;
    cfg.delay_tti = 3;
    cfg.default_cqi = 4;
    FeedbackState st(cfg, 1, 1, 2);
    auto snap = [](std::uint8_t v) {
        CqiSnapshot s;
        s.n_subbands = 2;
        s.dl = {v, v};
        s.dl_alone = {v, v};
        s.ul = {v, v};
        return s;
    };
    for (Tti t = 0; t < 20; ++t) {
        st.push(t, snap(static_cast<std::uint8_t>(t % 15 + 1)));
        const int got = st.age_and_report(t).dl_cqi(0, 1);
        if (t < 3)
            CHECK(got == 4);
        else
            CHECK(got == (t - 3) % 15 + 1);
    }
    CHECK_THROWS_AS(st.push(5, snap(1)), InvariantViolation);
}

TEST_CASE("pair refresh follows the update period")
{
    FeedbackConfig cfg;
    cfg.pair_update_period_tti = 50;
    FeedbackState st(cfg, 1, 1, 1);
    CHECK(st.pair_refresh_due(0));
    st.set_pair_feedback(0, {});
    CHECK_FALSE(st.pair_refresh_due(49));
    CHECK(st.pair_refresh_due(50));
    cfg.pair_update_period_tti = 0;
    CHECK_THROWS_AS(FeedbackState(cfg, 1, 1, 1), ConfigError);
}

TEST_CASE("pair feedback overhead stays under 2% for 4 bits every 50 TTIs")
{
    OverheadModel m;
    CHECK(m.pair_bits_per_tti() == doctest::Approx(10.0 * 10.0 * 4.0 / 50.0));
    CHECK(m.fraction() < 0.02);
    m.pair_period_tti = 1;
    CHECK(m.fraction() > 0.02);
}
