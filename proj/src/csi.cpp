// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/csi.hpp"

#include <algorithm>
#include <fstream>

namespace fdsim {

CqiTable CqiTable::lte()
{
    // 4-bit LTE CQI table; thresholds are the usual 10%-BLER switching points.
    return CqiTable{{
        {-6.7, 0.1523, 2},
        {-4.7, 0.2344, 2},
        {-2.3, 0.3770, 2},
        {0.2, 0.6016, 2},
        {2.4, 0.8770, 2},
        {4.3, 1.1758, 2},
        {5.9, 1.4766, 4},
        {8.1, 1.9141, 4},
        {10.3, 2.4063, 4},
        {11.7, 2.7305, 6},
        {14.1, 3.3223, 6},
        {16.3, 3.9023, 6},
        {18.7, 4.5234, 6},
        {21.0, 5.1152, 6},
        {22.7, 5.5547, 6},
    }};
}

void CqiTable::validate() const
{
    if (entries.empty()) throw ConfigError("cqi_table: at least one entry required");
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (!(entries[i].min_sinr_db > entries[i - 1].min_sinr_db))
            throw ConfigError("cqi_table: thresholds must be strictly increasing (entry " + std::to_string(i + 1) + ")");
        if (!(entries[i].spectral_efficiency > entries[i - 1].spectral_efficiency))
            throw ConfigError("cqi_table: efficiencies must be strictly increasing (entry " + std::to_string(i + 1) + ")");
    }
}

int sinr_to_cqi(double sinr_db, const CqiTable& table)
{
    const auto it = std::upper_bound(table.entries.begin(), table.entries.end(), sinr_db,
                                     [](double v, const CqiEntry& e) { return v < e.min_sinr_db; });
    return static_cast<int>(it - table.entries.begin());
}

PairMeasurement measure_pair_interference(const NetworkLayout& layout, CellId cell, const LinkGainMatrix& gains,
                                          std::span<const double> ul_power_dbm_per_rb)
{
    PairMeasurement m;
    m.cell = cell;
    m.ul_ues = layout.ul_ues_of_cell.at(cell);
    m.dl_ues = layout.dl_ues_of_cell.at(cell);
    m.interference_dbm.reserve(m.ul_ues.size() * m.dl_ues.size());
    for (NodeId u : m.ul_ues) {
        const double p = ul_power_dbm_per_rb[u];
        for (NodeId d : m.dl_ues)
            m.interference_dbm.push_back(p <= kFloorDbm ? kFloorDbm : std::max(kFloorDbm, p + gains.ue_to_ue.at(u, d)));
    }
    return m;
}

std::uint8_t quantize_degradation(int steps, const PairFeedbackMode& mode)
{
    steps = std::max(steps, 0);
    if (mode.effective_bits() == 1) return steps > mode.threshold_steps ? 1 : 0;
    const int top = (1 << mode.bits) - 1;
    return static_cast<std::uint8_t>(std::min(steps, top));
}

int PairFeedback::dequantize(std::uint8_t b) const
{
    if (mode.effective_bits() == 1) return b == 0 ? 0 : mode.threshold_steps + 1;
    return b;
}

bool PairFeedback::schedulable(std::size_t u, std::size_t d) const
{
    // Only the 1-bit form forbids pairs outright; k-bit reports price them.
    if (mode.effective_bits() == 1) return bucket(u, d) == 0;
    return true;
}

PairFeedback quantize_pair_feedback(const PairMeasurement& measurements, std::span<const DlBaseline> baseline,
                                    const PairFeedbackMode& mode, const CqiTable& table)
{
    FDSIM_EXPECTS(baseline.size() == measurements.dl_ues.size(), "one baseline per DL UE required");
    if (mode.kind == PairFeedbackKind::MultiBit && (mode.bits < 1 || mode.bits > 8))
        throw ConfigError("feedback.pair_bits must be within [1, 8]");

    PairFeedback fb;
    fb.mode = mode;
    fb.cell = measurements.cell;
    fb.ul_ues = measurements.ul_ues;
    fb.dl_ues = measurements.dl_ues;
    fb.buckets.reserve(measurements.interference_dbm.size());
    for (std::size_t u = 0; u < measurements.ul_ues.size(); ++u) {
        for (std::size_t d = 0; d < measurements.dl_ues.size(); ++d) {
            const double s = db_to_linear(baseline[d].signal_dbm);
            const double ipn = s / db_to_linear(baseline[d].sinr_db);
            const double degraded = linear_to_db(s / (ipn + db_to_linear(measurements.at(u, d))));
            const int steps = sinr_to_cqi(baseline[d].sinr_db, table) - sinr_to_cqi(degraded, table);
            fb.buckets.push_back(quantize_degradation(steps, mode));
        }
    }
    return fb;
}

FeedbackState::FeedbackState(FeedbackConfig cfg, std::size_t n_dl, std::size_t n_ul, int n_subbands) : cfg_(cfg)
{
    if (cfg_.delay_tti < 0) throw ConfigError("feedback.delay_tti must be >= 0");
    if (cfg_.pair_update_period_tti < 1) throw ConfigError("feedback.pair_update_period_tti must be >= 1");
    default_.n_subbands = n_subbands;
    default_.dl.assign(n_dl * static_cast<std::size_t>(n_subbands), static_cast<std::uint8_t>(cfg_.default_cqi));
    default_.dl_alone = default_.dl;
    default_.ul.assign(n_ul * static_cast<std::size_t>(n_subbands), static_cast<std::uint8_t>(cfg_.default_cqi));
}

void FeedbackState::push(Tti stamp, CqiSnapshot snapshot)
{
    FDSIM_EXPECTS(history_.empty() || stamp > history_.back().first, "feedback stamps must increase");
    history_.emplace_back(stamp, std::move(snapshot));
    // Keep the newest report that is already visible, plus everything still ageing.
    while (history_.size() > 1 && history_[1].first <= stamp - cfg_.delay_tti) history_.pop_front();
}

const CqiSnapshot& FeedbackState::age_and_report(Tti tti) const
{
    const Tti visible = tti - cfg_.delay_tti;
    const CqiSnapshot* best = &default_;
    for (const auto& [stamp, snap] : history_) {
        if (stamp > visible) break;
        best = &snap;
    }
    return *best;
}

bool FeedbackState::pair_refresh_due(Tti tti) const
{
    return last_pair_update_ < 0 || tti - last_pair_update_ >= cfg_.pair_update_period_tti;
}

void FeedbackState::set_pair_feedback(Tti tti, std::vector<PairFeedback> per_cell)
{
    for (auto& p : per_cell) p.last_update = tti;
    pairs_ = std::move(per_cell);
    last_pair_update_ = tti;
}

double OverheadModel::pair_bits_per_tti() const
{
    return static_cast<double>(n_ul) * n_dl * pair_bits / pair_period_tti;
}

double OverheadModel::baseline_bits_per_tti() const
{
    const int lte_subbands = (total_rb + lte_subband_rb - 1) / lte_subband_rb;
    return static_cast<double>(n_dl) * cqi_bits * (lte_subbands + 1) / cqi_period_tti;
}

void write_pair_feedback_csv(const std::string& path, const std::vector<PairFeedback>& per_cell)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "cell,ul_ue,dl_ue,bucket,last_update\n";
    for (const auto& fb : per_cell)
        for (std::size_t u = 0; u < fb.ul_ues.size(); ++u)
            for (std::size_t d = 0; d < fb.dl_ues.size(); ++d)
                out << fb.cell << ',' << fb.ul_ues[u] << ',' << fb.dl_ues[d] << ',' << int(fb.bucket(u, d)) << ','
                    << fb.last_update << '\n';
}

}  // namespace fdsim
