// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/radio.hpp"

#include <algorithm>

#include "fdsim/stats.hpp"

namespace fdsim {

std::string_view to_string(DuplexMode m)
{
    switch (m) {
    case DuplexMode::FullDuplex:
        return "fd";
    case DuplexMode::Fdd:
        return "fdd";
    case DuplexMode::FlexibleDuplex:
        return "flexible";
    }
    return "?";
}

DuplexMode duplex_from_string(std::string_view s)
{
    if (s == "fd" || s == "full_duplex") return DuplexMode::FullDuplex;
    if (s == "fdd") return DuplexMode::Fdd;
    if (s == "flexible" || s == "flex" || s == "flexible_duplex") return DuplexMode::FlexibleDuplex;
    throw ConfigError("unknown duplex mode '" + std::string(s) + "'");
}

namespace {

void append_band(std::vector<Subband>& out, int first_rb, int n_rb, int per_subband, SubbandUse use)
{
    const int n = std::max(1, n_rb / per_subband);
    for (int i = 0; i < n; ++i) out.push_back({first_rb + i * per_subband, per_subband, use});
    out.back().n_rb = n_rb - (n - 1) * per_subband;
}

}  // namespace

ResourceGrid ResourceGrid::make(DuplexMode mode, int total_rb, int rb_per_subband)
{
    if (total_rb < 2 || rb_per_subband < 1) throw ConfigError("grid: total_rb >= 2 and rb_per_subband >= 1 required");
    ResourceGrid g;
    g.mode = mode;
    if (mode == DuplexMode::Fdd) {
        const int half = total_rb / 2;
        append_band(g.subbands, 0, half, rb_per_subband, SubbandUse::DownlinkOnly);
        append_band(g.subbands, half, half, rb_per_subband, SubbandUse::UplinkOnly);
    } else {
        append_band(g.subbands, 0, total_rb, rb_per_subband, SubbandUse::Both);
    }
    return g;
}

bool ResourceGrid::allows(int s, Direction d) const
{
    const SubbandUse u = subbands.at(static_cast<std::size_t>(s)).use;
    if (u == SubbandUse::Both) return true;
    return (u == SubbandUse::DownlinkOnly) == (d == Direction::Downlink);
}

int ResourceGrid::rbs_for(Direction d) const
{
    int n = 0;
    for (int s = 0; s < size(); ++s)
        if (allows(s, d)) n += subbands[static_cast<std::size_t>(s)].n_rb;
    return n;
}

void PowerConfig::validate() const
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("power.alpha must be within [0, 1]");
    if (reference_rbs < 1) throw ConfigError("power.reference_rbs must be >= 1");
    if (!std::isfinite(p_max_dbm) || !std::isfinite(p0_dbm) || !std::isfinite(boost_db) || !std::isfinite(bs_power_dbm))
        throw ConfigError("power: values must be finite");
}

double NoiseConfig::ue_dbm_per_rb() const
{
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(kRbBandwidthHz) + ue_noise_figure_db;
}

double NoiseConfig::bs_dbm_per_rb() const
{
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(kRbBandwidthHz) + bs_noise_figure_db;
}

double olpc_power(double path_loss_db, const PowerConfig& cfg)
{
    return std::min(cfg.p_max_dbm, cfg.p0_dbm + cfg.boost_db + cfg.alpha * path_loss_db);
}

double olpc_power(const NetworkLayout& layout, const LinkGainMatrix& gains, NodeId ue, const PowerConfig& cfg)
{
    const CellId c = layout.ues.at(ue).cell;
    return olpc_power(-gains.bs_to_ue.at(c, ue), cfg);
}

double ue_power_per_rb(double nominal_dbm_per_rb, int n_rbs, double p_max_dbm)
{
    FDSIM_EXPECTS(n_rbs >= 1, "power for an empty allocation");
    return std::min(nominal_dbm_per_rb, p_max_dbm - 10.0 * std::log10(static_cast<double>(n_rbs)));
}

namespace {

std::vector<double> ue_powers_linear(const NetworkLayout& layout, const LinkGainMatrix& gains, PowerConfig power,
                                     double boost_db)
{
    power.boost_db = boost_db;
    std::vector<double> p(layout.ues.size(), 0.0);
    for (NodeId u : layout.ul_ues) p[u] = db_to_linear(olpc_power(layout, gains, u, power));
    return p;
}

}  // namespace

std::vector<double> long_term_ul_sinr_db(const NetworkLayout& layout, const LinkGainMatrix& gains, const PowerConfig& power,
                                         const NoiseConfig& noise, const SelfInterferenceConfig& sic, double boost_db,
                                         bool self_interference)
{
    const auto p = ue_powers_linear(layout, gains, power, boost_db);
    const double p_bs = db_to_linear(power.bs_dbm_per_rb());
    const double n_bs = db_to_linear(noise.bs_dbm_per_rb());
    const std::size_t nc = layout.cells.size();

    std::vector<double> ul_interference(nc, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
        double i = n_bs;
        for (std::size_t o = 0; o < nc; ++o) {
            if (o == c) continue;
            i += p_bs * db_to_linear(gains.bs_to_bs.at(o, c));
            const auto& uls = layout.ul_ues_of_cell[o];
            if (uls.empty()) continue;
            double mean = 0.0;
            for (NodeId u : uls) mean += p[u] * db_to_linear(gains.bs_to_ue.at(c, u));
            i += mean / static_cast<double>(uls.size());
        }
        if (self_interference) i += p_bs * db_to_linear(-sic.sic_db);
        ul_interference[c] = i;
    }

    std::vector<double> out;
    out.reserve(layout.ul_ues.size());
    for (NodeId u : layout.ul_ues) {
        const CellId c = layout.ues[u].cell;
        out.push_back(linear_to_db(p[u] * db_to_linear(gains.bs_to_ue.at(c, u)) / ul_interference[c]));
    }
    return out;
}

std::vector<double> dl_interference_rise_db(const NetworkLayout& layout, const LinkGainMatrix& gains,
                                            const PowerConfig& power, const NoiseConfig& noise, double boost_db)
{
    const auto p = ue_powers_linear(layout, gains, power, boost_db);
    const double p_bs = db_to_linear(power.bs_dbm_per_rb());
    const double n_ue = db_to_linear(noise.ue_dbm_per_rb());

    std::vector<double> out;
    out.reserve(layout.dl_ues.size());
    for (NodeId d : layout.dl_ues) {
        const CellId serving = layout.ues[d].cell;
        double conventional = n_ue;
        double ueue = 0.0;
        for (const SmallCell& c : layout.cells) {
            if (c.id != serving) conventional += p_bs * db_to_linear(gains.bs_to_ue.at(c.id, d));
            const auto& uls = layout.ul_ues_of_cell[c.id];
            if (uls.empty()) continue;
            double mean = 0.0;
            for (NodeId u : uls) mean += p[u] * db_to_linear(gains.ue_to_ue.at(u, d));
            ueue += mean / static_cast<double>(uls.size());
        }
        out.push_back(linear_to_db((conventional + ueue) / conventional));
    }
    return out;
}

BoostSelection select_boost(const NetworkLayout& layout, const LinkGainMatrix& gains, const PowerConfig& power,
                            const NoiseConfig& noise, const SelfInterferenceConfig& sic, const BoostCriteria& criteria)
{
    if (!(criteria.step_db > 0.0)) throw ConfigError("boost.step_db must be positive");
    auto median = [](const std::vector<double>& v) { return v.empty() ? 0.0 : percentile(v, 50.0); };
    auto rise_at = [&](double b) { return median(dl_interference_rise_db(layout, gains, power, noise, b)); };
    auto ul_at = [&](double b) {
        return median(long_term_ul_sinr_db(layout, gains, power, noise, sic, b, criteria.self_interference));
    };

    BoostSelection sel;
    const int steps = static_cast<int>(std::floor(criteria.max_boost_db / criteria.step_db + 1e-9));

    if (rise_at(0.0) > criteria.max_dl_degradation_db) {
        sel.boost_db = 0.0;
        sel.median_ul_sinr_db = ul_at(0.0);
        sel.median_dl_rise_db = rise_at(0.0);
        sel.capped = sel.median_ul_sinr_db < criteria.target_ul_sinr_db;
        sel.warning = "boost: DL degradation cap already exceeded without boosting; boost left at 0 dB";
        return sel;
    }

    int cap = 0;
    while (cap < steps && rise_at((cap + 1) * criteria.step_db) <= criteria.max_dl_degradation_db) ++cap;

    for (int k = 0; k <= cap; ++k) {
        const double b = k * criteria.step_db;
        const double ul = ul_at(b);
        if (ul >= criteria.target_ul_sinr_db) {
            sel.boost_db = b;
            sel.median_ul_sinr_db = ul;
            sel.median_dl_rise_db = rise_at(b);
            return sel;
        }
    }
    sel.boost_db = cap * criteria.step_db;
    sel.capped = true;
    sel.median_ul_sinr_db = ul_at(sel.boost_db);
    sel.median_dl_rise_db = rise_at(sel.boost_db);
    sel.warning = "boost: UL SINR target unreachable within the DL degradation cap; using the cap";
    return sel;
}

InterferenceModel::InterferenceModel(const NetworkLayout& layout, const LinkGainMatrix& gains, const ResourceGrid& grid,
                                     const NoiseConfig& noise, const SelfInterferenceConfig& sic)
    : layout_(&layout),
      grid_(grid),
      n_bs_(layout.cells.size()),
      n_ue_(layout.ues.size()),
      n_dl_(layout.dl_ues.size()),
      self_echo_(db_to_linear(-sic.sic_db)),
      noise_ue_(db_to_linear(noise.ue_dbm_per_rb())),
      noise_bs_(db_to_linear(noise.bs_dbm_per_rb()))
{
    FDSIM_EXPECTS(gains.n_bs() == n_bs_ && gains.n_ue() == n_ue_, "gain matrix does not match layout");
    bs_ue_.resize(n_bs_ * n_ue_);
    for (std::size_t c = 0; c < n_bs_; ++c)
        for (std::size_t u = 0; u < n_ue_; ++u) bs_ue_[c * n_ue_ + u] = db_to_linear(gains.bs_to_ue.at(c, u));
    bsbs_.assign(n_bs_ * n_bs_, 0.0);
    for (std::size_t a = 0; a < n_bs_; ++a)
        for (std::size_t b = 0; b < n_bs_; ++b)
            if (a != b) bsbs_[a * n_bs_ + b] = db_to_linear(gains.bs_to_bs.at(a, b));

    dl_index_.assign(n_ue_, 0);
    ul_index_.assign(n_ue_, 0);
    for (std::size_t i = 0; i < layout.dl_ues.size(); ++i) dl_index_[layout.dl_ues[i]] = i;
    for (std::size_t i = 0; i < layout.ul_ues.size(); ++i) ul_index_[layout.ul_ues[i]] = i;

    ueue_.resize(layout.ul_ues.size() * n_dl_);
    for (std::size_t i = 0; i < layout.ul_ues.size(); ++i)
        for (std::size_t j = 0; j < n_dl_; ++j)
            ueue_[i * n_dl_ + j] = db_to_linear(gains.ue_to_ue.at(layout.ul_ues[i], layout.dl_ues[j]));
}

void InterferenceModel::check(std::span<const ScheduleDecision> decisions) const
{
    FDSIM_EXPECTS(decisions.size() == n_bs_, "one decision per cell required");
    for (std::size_t c = 0; c < decisions.size(); ++c) {
        const auto& d = decisions[c];
        FDSIM_EXPECTS(d.cell == c, "decisions must be ordered by cell id");
        FDSIM_EXPECTS(static_cast<int>(d.subbands.size()) == grid_.size(), "decision size does not match grid");
        for (int s = 0; s < grid_.size(); ++s) {
            const auto& a = d.subbands[static_cast<std::size_t>(s)];
            if (a.dl_ue) {
                FDSIM_EXPECTS(*a.dl_ue < n_ue_, "unknown DL UE");
                const auto& ue = layout_->ues[*a.dl_ue];
                FDSIM_EXPECTS(ue.cell == c && ue.direction == Direction::Downlink, "DL UE not served by this cell");
                FDSIM_EXPECTS(grid_.allows(s, Direction::Downlink), "DL on a subband the grid reserves for UL");
            }
            if (a.ul_ue) {
                FDSIM_EXPECTS(*a.ul_ue < n_ue_, "unknown UL UE");
                const auto& ue = layout_->ues[*a.ul_ue];
                FDSIM_EXPECTS(ue.cell == c && ue.direction == Direction::Uplink, "UL UE not served by this cell");
                FDSIM_EXPECTS(grid_.allows(s, Direction::Uplink), "UL on a subband the grid reserves for DL");
            }
            if (grid_.mode == DuplexMode::FlexibleDuplex)
                FDSIM_EXPECTS(!(a.dl_ue && a.ul_ue), "flexible duplex subband carries both directions");
        }
    }
}

InterferenceModel::Transmitters InterferenceModel::on_subband(int s, std::span<const ScheduleDecision> decisions) const
{
    Transmitters tx;
    for (const auto& d : decisions) {
        const auto& a = d.subbands[static_cast<std::size_t>(s)];
        if (a.dl_ue) tx.dl.emplace_back(d.cell, db_to_linear(a.dl_power_dbm_per_rb));
    }
    for (const auto& d : decisions) {
        const auto& a = d.subbands[static_cast<std::size_t>(s)];
        if (a.ul_ue) tx.ul.emplace_back(*a.ul_ue, db_to_linear(a.ul_power_dbm_per_rb));
    }
    std::sort(tx.ul.begin(), tx.ul.end());
    return tx;
}

double InterferenceModel::dl_interference(NodeId victim, const Transmitters& tx, bool include_intra) const
{
    const CellId serving = layout_->ues[victim].cell;
    const std::size_t di = dl_index_[victim];
    double i = 0.0;
    for (const auto& [c, p] : tx.dl)
        if (c != serving) i += p * bs_ue_[c * n_ue_ + victim];
    for (const auto& [u, p] : tx.ul) {
        if (!include_intra && layout_->ues[u].cell == serving) continue;
        i += p * ueue_[ul_index_[u] * n_dl_ + di];
    }
    return i;
}

double InterferenceModel::ul_interference(CellId victim_cell, const Transmitters& tx, bool own_dl_active) const
{
    double i = 0.0;
    for (const auto& [u, p] : tx.ul)
        if (layout_->ues[u].cell != victim_cell) i += p * bs_ue_[victim_cell * n_ue_ + u];
    double own_dl = 0.0;
    for (const auto& [c, p] : tx.dl) {
        if (c == victim_cell) {
            own_dl = p;
            continue;
        }
        i += p * bsbs_[c * n_bs_ + victim_cell];
    }
    // Residual self echo only exists where the BS transmits and receives on the same subband.
    if (own_dl_active && grid_.mode == DuplexMode::FullDuplex) i += own_dl * self_echo_;
    return i;
}

SubbandSinr InterferenceModel::compute_sinr(CellId cell, int subband, std::span<const ScheduleDecision> decisions) const
{
    check(decisions);
    FDSIM_EXPECTS(subband >= 0 && subband < grid_.size(), "subband out of range");
    const Transmitters tx = on_subband(subband, decisions);
    const auto& a = decisions[cell].subbands[static_cast<std::size_t>(subband)];
    SubbandSinr out;
    if (a.dl_ue) {
        const double s = db_to_linear(a.dl_power_dbm_per_rb) * bs_ue_[cell * n_ue_ + *a.dl_ue];
        out.dl_sinr_db = linear_to_db(s / (dl_interference(*a.dl_ue, tx, true) + noise_ue_));
    }
    if (a.ul_ue) {
        const double s = db_to_linear(a.ul_power_dbm_per_rb) * bs_ue_[cell * n_ue_ + *a.ul_ue];
        out.ul_sinr_db = linear_to_db(s / (ul_interference(cell, tx, a.dl_ue.has_value()) + noise_bs_));
    }
    return out;
}

std::vector<std::vector<SubbandSinr>> InterferenceModel::evaluate(std::span<const ScheduleDecision> decisions) const
{
    check(decisions);
    std::vector<std::vector<SubbandSinr>> out(n_bs_, std::vector<SubbandSinr>(static_cast<std::size_t>(grid_.size())));
    for (int s = 0; s < grid_.size(); ++s) {
        const Transmitters tx = on_subband(s, decisions);
        if (tx.dl.empty() && tx.ul.empty()) continue;
        for (const auto& d : decisions) {
            const auto& a = d.subbands[static_cast<std::size_t>(s)];
            auto& o = out[d.cell][static_cast<std::size_t>(s)];
            if (a.dl_ue) {
                const double sig = db_to_linear(a.dl_power_dbm_per_rb) * bs_ue_[d.cell * n_ue_ + *a.dl_ue];
                o.dl_sinr_db = linear_to_db(sig / (dl_interference(*a.dl_ue, tx, true) + noise_ue_));
            }
            if (a.ul_ue) {
                const double sig = db_to_linear(a.ul_power_dbm_per_rb) * bs_ue_[d.cell * n_ue_ + *a.ul_ue];
                o.ul_sinr_db = linear_to_db(sig / (ul_interference(d.cell, tx, a.dl_ue.has_value()) + noise_bs_));
            }
        }
    }
    return out;
}

TtiMeasurement InterferenceModel::measure(std::span<const ScheduleDecision> decisions,
                                          std::span<const double> ul_nominal_dbm_per_rb, double bs_dbm_per_rb) const
{
    const int ns = grid_.size();
    const auto& dl_ues = layout_->dl_ues;
    const auto& ul_ues = layout_->ul_ues;
    TtiMeasurement m;
    m.n_subbands = ns;
    m.dl_sinr_db.assign(dl_ues.size() * ns, kFloorDbm);
    m.dl_sinr_no_intra_db.assign(dl_ues.size() * ns, kFloorDbm);
    m.ul_sinr_db.assign(ul_ues.size() * ns, kFloorDbm);
    const double p_bs = db_to_linear(bs_dbm_per_rb);

    std::vector<double> acc_all(dl_ues.size());
    std::vector<double> acc_other(dl_ues.size());
    std::vector<CellId> serving(dl_ues.size());
    for (std::size_t j = 0; j < dl_ues.size(); ++j) serving[j] = layout_->ues[dl_ues[j]].cell;

    for (int s = 0; s < ns; ++s) {
        const Transmitters tx = on_subband(s, decisions);
        if (grid_.allows(s, Direction::Downlink)) {
            std::fill(acc_all.begin(), acc_all.end(), 0.0);
            for (const auto& [c, p] : tx.dl) {
                const double* g = &bs_ue_[c * n_ue_];
                for (std::size_t j = 0; j < dl_ues.size(); ++j)
                    if (serving[j] != c) acc_all[j] += p * g[dl_ues[j]];
            }
            acc_other = acc_all;
            for (const auto& [u, p] : tx.ul) {
                const CellId uc = layout_->ues[u].cell;
                const double* g = &ueue_[ul_index_[u] * n_dl_];
                for (std::size_t j = 0; j < dl_ues.size(); ++j) {
                    const double term = p * g[j];
                    acc_all[j] += term;
                    if (serving[j] != uc) acc_other[j] += term;
                }
            }
            for (std::size_t j = 0; j < dl_ues.size(); ++j) {
                const double sig = p_bs * bs_ue_[serving[j] * n_ue_ + dl_ues[j]];
                m.dl_sinr_db[j * ns + s] = linear_to_db(sig / (acc_all[j] + noise_ue_));
                m.dl_sinr_no_intra_db[j * ns + s] = linear_to_db(sig / (acc_other[j] + noise_ue_));
            }
        }
        if (grid_.allows(s, Direction::Uplink)) {
            for (const auto& d : decisions) {
                const bool own_dl = d.subbands[static_cast<std::size_t>(s)].dl_ue.has_value();
                const double ipn = ul_interference(d.cell, tx, own_dl) + noise_bs_;
                for (NodeId u : layout_->ul_ues_of_cell[d.cell]) {
                    const double sig = db_to_linear(ul_nominal_dbm_per_rb[u]) * bs_ue_[d.cell * n_ue_ + u];
                    m.ul_sinr_db[ul_index_[u] * ns + s] = linear_to_db(sig / ipn);
                }
            }
        }
    }
    return m;
}

}  // namespace fdsim
