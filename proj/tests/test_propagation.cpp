// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include <doctest.h>

#include <cmath>

#include "fdsim/propagation.hpp"
#include "fdsim/topology.hpp"

using namespace fdsim;

TEST_CASE("indoor BS-BS loss at 30 m follows the closed form")
{
    const auto p = ScenarioParams::defaults(ScenarioKind::IndoorHotzone);
    const RadioNode a{{0.0, 0.0}, 6.0, NodeKind::Bs, 0};
    const RadioNode b{{30.0, 0.0}, 6.0, NodeKind::Bs, 0};
    const PathLoss pl = path_loss(a, b, p.channel, WrapConfig::none(), 99);
    const auto& m = p.channel.bs_bs;
    CHECK(pl.los);
    CHECK(pl.loss_db - pl.shadowing_db == doctest::Approx(m.los.intercept_db + m.los.slope_db_per_decade * std::log10(30.0)));
}

TEST_CASE("LoS probability shapes")
{
    CHECK(los_probability(LosProbability::Always, 1e4) == 1.0);
    CHECK(los_probability(LosProbability::Never, 1.0) == 0.0);
    CHECK(los_probability(LosProbability::IndoorHotspot, 10.0) == 1.0);
    CHECK(los_probability(LosProbability::IndoorHotspot, 30.0) == doctest::Approx(std::exp(-12.0 / 27.0)));
    CHECK(los_probability(LosProbability::IndoorHotspot, 80.0) == 0.5);
    CHECK(los_probability(LosProbability::UrbanMicro, 10.0) == doctest::Approx(1.0));
    const double d = 100.0;
    CHECK(los_probability(LosProbability::UrbanMicro, d) ==
          doctest::Approx(0.18 * (1.0 - std::exp(-d / 36.0)) + std::exp(-d / 36.0)));
    // Non-increasing with distance.
    double prev = 1.0;
    for (double x = 1.0; x < 500.0; x += 3.0) {
        const double p = los_probability(LosProbability::UrbanMicro, x);
        CHECK(p <= prev + 1e-12);
        prev = p;
    }
}

TEST_CASE("path loss is reciprocal and keyed by the endpoints")
{
    const auto p = ScenarioParams::defaults(ScenarioKind::OutdoorUniform);
    const RadioNode a{{10.0, 20.0}, 10.0, NodeKind::Bs, -1};
    const RadioNode b{{-40.0, 75.0}, 1.5, NodeKind::Ue, -1};
    const auto ab = path_loss(a, b, p.channel, WrapConfig::hexagonal(500.0), 5);
    const auto ba = path_loss(b, a, p.channel, WrapConfig::hexagonal(500.0), 5);
    CHECK(ab.loss_db == ba.loss_db);
    CHECK(ab.los == ba.los);
    const auto other = path_loss(a, b, p.channel, WrapConfig::hexagonal(500.0), 6);
    CHECK(other.shadowing_db != ab.shadowing_db);
}

TEST_CASE("links shorter than the model minimum are clamped and flagged")
{
    const auto p = ScenarioParams::defaults(ScenarioKind::OutdoorUniform);
    const RadioNode a{{0.0, 0.0}, 1.5, NodeKind::Ue, -1};
    const RadioNode b{{0.0, 3.0}, 1.5, NodeKind::Bs, -1};
    const auto near = path_loss(a, b, p.channel, WrapConfig::none(), 1);
    CHECK(near.clamped);
    const RadioNode c{{0.0, 50.0}, 1.5, NodeKind::Bs, -1};
    CHECK_FALSE(path_loss(a, c, p.channel, WrapConfig::none(), 1).clamped);
}

TEST_CASE("gain matrix shapes, symmetry and nulling")
{
    const ScenarioKind k = ScenarioKind::OutdoorCluster;
    const auto layout = generate_layout(k, 3, ScenarioParams::defaults(k));
    const auto open = build_gain_matrix(layout, NullingConfig{0.0, 0.0}, layout.wrap, 3);
    const auto nulled = build_gain_matrix(layout, NullingConfig{20.0, 20.0}, layout.wrap, 3);
    CHECK(open.bs_to_bs.rows() == 84);
    CHECK(open.bs_to_ue.rows() == 84);
    CHECK(open.bs_to_ue.cols() == 1680);
    CHECK(open.ue_to_ue.rows() == 1680);
    bool exact = true, symmetric = true;
    for (std::size_t i = 0; i < 84; ++i)
        for (std::size_t j = 0; j < 84; ++j) {
            if (i == j) continue;
            exact = exact && std::abs(open.bs_to_bs.at(i, j) - nulled.bs_to_bs.at(i, j) - 40.0) < 1e-9;
            symmetric = symmetric && open.bs_to_bs.at(i, j) == open.bs_to_bs.at(j, i);
        }
    CHECK(exact);
    CHECK(symmetric);
    bool ue_symmetric = true;
    for (std::size_t i = 0; i < 1680; i += 7)
        for (std::size_t j = 0; j < 1680; j += 5)
            if (i != j) ue_symmetric = ue_symmetric && open.ue_to_ue.at(i, j) == open.ue_to_ue.at(j, i);
    CHECK(ue_symmetric);
    // Nulling touches only BS-BS links.
    CHECK(open.bs_to_ue.data() == nulled.bs_to_ue.data());
    CHECK(open.ue_to_ue.data() == nulled.ue_to_ue.data());
}

TEST_CASE("nulling config rejects negative values")
{
    CHECK_THROWS_AS((NullingConfig{-1.0, 0.0}.validate()), ConfigError);
    CHECK_NOTHROW((NullingConfig{20.0, 20.0}.validate()));
    CHECK((NullingConfig{20.0, 20.0}.total_db()) == 40.0);
}

TEST_CASE("interference ratios: removing nulling shifts every BS-BS ratio by the same constant")
{
    const ScenarioKind k = ScenarioKind::IndoorHotzone;
    const auto layout = generate_layout(k, 2, ScenarioParams::defaults(k));
    const auto open = build_gain_matrix(layout, NullingConfig{0.0, 0.0}, layout.wrap, 2);
    const auto nulled = build_gain_matrix(layout, NullingConfig{20.0, 20.0}, layout.wrap, 2);
    InterferencePowers pw;
    pw.bs_dbm_per_rb = 7.0;
    pw.ue_dbm_per_rb.assign(layout.ues.size(), -10.0);
    const auto a = interference_ratio_cdfs(layout, open, pw);
    const auto b = interference_ratio_cdfs(layout, nulled, pw);
    REQUIRE(a.bsbs_over_ul.size() == b.bsbs_over_ul.size());
    for (std::size_t i = 0; i < a.bsbs_over_ul.size(); ++i)
        CHECK(a.bsbs_over_ul.values()[i] - b.bsbs_over_ul.values()[i] == doctest::Approx(40.0));
    CHECK(a.ueue_over_dl.median() == doctest::Approx(b.ueue_over_dl.median()));
}
