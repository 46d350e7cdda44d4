// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/propagation.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iostream>
#include <mutex>

#include "fdsim/rng.hpp"
#include "fdsim/topology.hpp"

namespace fdsim {

namespace {

constexpr std::uint64_t kLosTag = 0x4c4f53;
constexpr std::uint64_t kShadowTag = 0x534844;

std::uint64_t position_key(const RadioNode& n)
{
    std::uint64_t h = mix64(std::bit_cast<std::uint64_t>(n.pos.x));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(n.pos.y));
    return mix64(h ^ std::bit_cast<std::uint64_t>(n.height_m));
}

const LinkModel& model_for(const RadioNode& a, const RadioNode& b, const ChannelParams& ch)
{
    if (a.kind == NodeKind::Bs && b.kind == NodeKind::Bs) return ch.bs_bs;
    if (a.kind == NodeKind::Ue && b.kind == NodeKind::Ue) return ch.ue_ue;
    return ch.bs_ue;
}

void log_clamp_once()
{
    static std::once_flag flag;
    std::call_once(flag, [] {
        std::clog << "fdsim: link distance below model minimum, clamped (reported once)\n";
    });
}

}  // namespace

double los_probability(LosProbability kind, double d2_m)
{
    switch (kind) {
    case LosProbability::Always:
        return 1.0;
    case LosProbability::Never:
        return 0.0;
    case LosProbability::IndoorHotspot:
        if (d2_m <= 18.0) return 1.0;
        if (d2_m < 37.0) return std::exp(-(d2_m - 18.0) / 27.0);
        return 0.5;
    case LosProbability::UrbanMicro: {
        const double e = std::exp(-d2_m / 36.0);
        return std::min(18.0 / std::max(d2_m, 1e-9), 1.0) * (1.0 - e) + e;
    }
    }
    return 0.0;
}

PathLoss path_loss(const RadioNode& tx, const RadioNode& rx, const ChannelParams& channel, const WrapConfig& wrap,
                   std::uint64_t shadow_seed)
{
    const LinkModel& m = model_for(tx, rx, channel);
    const double d2 = wrapped_distance(tx.pos, rx.pos, wrap);
    const double dh = tx.height_m - rx.height_m;
    double d3 = std::sqrt(d2 * d2 + dh * dh);

    PathLoss out;
    if (d3 < m.min_distance_m) {
        d3 = m.min_distance_m;
        out.clamped = true;
        log_clamp_once();
    }

    const auto ka = position_key(tx);
    const auto kb = position_key(rx);
    const auto lo = std::min(ka, kb);
    const auto hi = std::max(ka, kb);

    const bool other_building = tx.building >= 0 && rx.building >= 0 && tx.building != rx.building;
    SplitMix64 los_gen(derive_seed(shadow_seed, {kLosTag, lo, hi}));
    out.los = !other_building && uniform01(los_gen) < los_probability(m.los_probability, d2);

    const double pl_los = m.los.at(d3);
    double pl = out.los ? pl_los : std::max(pl_los, m.nlos.at(d3));
    if (other_building) pl += channel.inter_building_loss_db;

    SplitMix64 shadow_gen(derive_seed(shadow_seed, {kShadowTag, lo, hi}));
    out.shadowing_db = (out.los ? m.shadow_sigma_los_db : m.shadow_sigma_nlos_db) * standard_normal(shadow_gen);
    out.loss_db = pl + out.shadowing_db;
    return out;
}

double link_gain_db(const RadioNode& a, const RadioNode& b, const ChannelParams& channel, const WrapConfig& wrap,
                    std::uint64_t shadow_seed)
{
    double antenna = 0.0;
    if (a.kind == NodeKind::Bs) antenna += channel.bs_antenna_gain_dbi;
    if (b.kind == NodeKind::Bs) antenna += channel.bs_antenna_gain_dbi;
    return antenna - path_loss(a, b, channel, wrap, shadow_seed).loss_db;
}

void NullingConfig::validate() const
{
    if (tx_null_db < 0.0 || tx_null_db > 35.0 || rx_null_db < 0.0 || rx_null_db > 35.0)
        throw ConfigError("nulling: each side must be within [0, 35] dB");
}

void SelfInterferenceConfig::validate() const
{
    if (!(sic_db >= 0.0)) throw ConfigError("self_interference.sic_db must be >= 0");
}

LinkGainMatrix build_gain_matrix(const NetworkLayout& layout, const NullingConfig& nulling, const WrapConfig& wrap,
                                 std::uint64_t rng_seed)
{
    const auto shadow_seed = stream_seed(rng_seed, StreamTag::Shadowing);
    const auto& ch = layout.params.channel;
    const std::size_t nb = layout.cells.size();
    const std::size_t nu = layout.ues.size();

    LinkGainMatrix g;
    g.bs_to_ue = GainTable(nb, nu);
    g.ue_to_ue = GainTable(nu, nu);
    g.bs_to_bs = GainTable(nb, nb);
    g.nulling_db = nulling.total_db();

    auto gain = [&](const RadioNode& a, const RadioNode& b) {
        double antenna = 0.0;
        if (a.kind == NodeKind::Bs) antenna += ch.bs_antenna_gain_dbi;
        if (b.kind == NodeKind::Bs) antenna += ch.bs_antenna_gain_dbi;
        const PathLoss pl = path_loss(a, b, ch, wrap, shadow_seed);
        if (pl.clamped) ++g.clamped_links;
        const double v = antenna - pl.loss_db;
        FDSIM_EXPECTS(std::isfinite(v) && v <= 0.0, "link gain must be a finite attenuation");
        return v;
    };

    for (std::size_t b = 0; b < nb; ++b) {
        const RadioNode bn = layout.radio_node(layout.cells[b]);
        for (std::size_t u = 0; u < nu; ++u) g.bs_to_ue.at(b, u) = gain(bn, layout.radio_node(layout.ues[u]));
        for (std::size_t c = b + 1; c < nb; ++c) {
            const double v = gain(bn, layout.radio_node(layout.cells[c])) - nulling.total_db();
            g.bs_to_bs.at(b, c) = v;
            g.bs_to_bs.at(c, b) = v;
        }
    }
    for (std::size_t i = 0; i < nu; ++i) {
        const RadioNode a = layout.radio_node(layout.ues[i]);
        for (std::size_t j = i + 1; j < nu; ++j) {
            const double v = gain(a, layout.radio_node(layout.ues[j]));
            g.ue_to_ue.at(i, j) = v;
            g.ue_to_ue.at(j, i) = v;
        }
    }
    return g;
}

InterferenceRatioCdfs interference_ratio_cdfs(const NetworkLayout& layout, const LinkGainMatrix& gains,
                                              const InterferencePowers& powers)
{
    const double p_bs = db_to_linear(powers.bs_dbm_per_rb);
    auto p_ue = [&](NodeId u) { return db_to_linear(powers.ue_dbm_per_rb.at(u)); };

    InterferenceRatioCdfs out;
    std::vector<double> bsbs, ueue;

    for (const SmallCell& victim : layout.cells) {
        double bs_sum = 0.0;
        std::size_t bs_n = 0;
        for (const SmallCell& c : layout.cells) {
            if (c.id == victim.id) continue;
            bs_sum += p_bs * db_to_linear(gains.bs_to_bs.at(c.id, victim.id));
            ++bs_n;
        }
        double ul_sum = 0.0;
        std::size_t ul_n = 0;
        for (NodeId u : layout.ul_ues) {
            if (layout.ues[u].cell == victim.id) continue;
            ul_sum += p_ue(u) * db_to_linear(gains.bs_to_ue.at(victim.id, u));
            ++ul_n;
        }
        if (bs_n == 0 || ul_n == 0 || ul_sum <= 0.0) {
            ++out.skipped;
            continue;
        }
        bsbs.push_back(linear_to_db(bs_sum / bs_n) - linear_to_db(ul_sum / ul_n));
    }

    for (NodeId d : layout.dl_ues) {
        const CellId serving = layout.ues[d].cell;
        double ue_sum = 0.0;
        std::size_t ue_n = 0;
        for (NodeId u : layout.ul_ues) {
            ue_sum += p_ue(u) * db_to_linear(gains.ue_to_ue.at(u, d));
            ++ue_n;
        }
        double dl_sum = 0.0;
        std::size_t dl_n = 0;
        for (const SmallCell& c : layout.cells) {
            if (c.id == serving) continue;
            dl_sum += p_bs * db_to_linear(gains.bs_to_ue.at(c.id, d));
            ++dl_n;
        }
        if (ue_n == 0 || dl_n == 0 || dl_sum <= 0.0 || ue_sum <= 0.0) {
            ++out.skipped;
            continue;
        }
        ueue.push_back(linear_to_db(ue_sum / ue_n) - linear_to_db(dl_sum / dl_n));
    }

    if (out.skipped > 0)
        std::clog << "fdsim: interference ratio skipped " << out.skipped << " node(s) without interferers\n";
    out.bsbs_over_ul = EmpiricalCdf(std::move(bsbs));
    out.ueue_over_dl = EmpiricalCdf(std::move(ueue));
    return out;
}

void write_gain_csv(const std::string& path, const LinkGainMatrix& gains)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out.precision(10);
    out << "class,tx_id,rx_id,gain_dB\n";
    for (std::size_t b = 0; b < gains.n_bs(); ++b)
        for (std::size_t u = 0; u < gains.n_ue(); ++u) out << "bs_ue," << b << ',' << u << ',' << gains.bs_to_ue.at(b, u) << '\n';
    for (std::size_t b = 0; b < gains.n_bs(); ++b)
        for (std::size_t c = 0; c < gains.n_bs(); ++c)
            if (b != c) out << "bs_bs," << b << ',' << c << ',' << gains.bs_to_bs.at(b, c) << '\n';
    for (std::size_t i = 0; i < gains.n_ue(); ++i)
        for (std::size_t j = i + 1; j < gains.n_ue(); ++j)
            out << "ue_ue," << i << ',' << j << ',' << gains.ue_to_ue.at(i, j) << '\n';
}

}  // namespace fdsim
