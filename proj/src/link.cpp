// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/link.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <tuple>

namespace fdsim {

McsTable McsTable::from_cqi(const CqiTable& cqi, double bler_slope)
{
    if (!(bler_slope > 0.0)) throw ConfigError("link.bler_slope must be positive");
    McsTable t;
    const double shift = std::log(1.0 / kBlerTarget - 1.0) / bler_slope;
    for (int i = 0; i < cqi.max_cqi(); ++i) {
        const auto& e = cqi.entries[static_cast<std::size_t>(i)];
        t.entries.push_back({i, e.spectral_efficiency, e.min_sinr_db, e.min_sinr_db - shift, bler_slope});
    }
    return t;
}

void McsTable::validate() const
{
    if (entries.empty()) throw ConfigError("mcs table is empty");
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (!(entries[i].spectral_efficiency > entries[i - 1].spectral_efficiency))
            throw ConfigError("mcs table: efficiencies must be strictly increasing");
}

double bler(int mcs, double sinr_db, const McsTable& table)
{
    const McsEntry& e = table.at(mcs);
    return 1.0 / (1.0 + std::exp(e.bler_slope * (sinr_db - e.sinr_50pct_db)));
}

int select_mcs(double sinr_db, const McsTable& table)
{
    // The 10% points increase with the index, so the answer is the last entry at or below sinr.
    int best = 0;
    for (int m = table.size() - 1; m > 0; --m) {
        if (table.at(m).sinr_10pct_db <= sinr_db + 1e-9) {
            best = m;
            break;
        }
    }
    return best;
}

int tb_size(int mcs, int n_rbs, const McsTable& table, double overhead_fraction)
{
    FDSIM_EXPECTS(n_rbs >= 1, "transport block over zero RBs");
    const double bits = table.at(mcs).spectral_efficiency * kRbBandwidthHz * kTtiSeconds * n_rbs * (1.0 - overhead_fraction);
    return static_cast<int>(std::floor(bits));
}

void HarqConfig::validate() const
{
    if (rtt_tti < 1) throw ConfigError("harq.rtt_tti must be >= 1");
    if (max_transmissions < 1) throw ConfigError("harq.max_transmissions must be >= 1");
    if (!std::isfinite(combining_gain_db) || combining_gain_db < 0.0)
        throw ConfigError("harq.combining_gain_db must be finite and >= 0");
}

HarqBuffer::HarqBuffer(HarqConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void HarqBuffer::hold(HarqProcess p)
{
    pending_.push_back(std::move(p));
}

std::vector<HarqProcess> HarqBuffer::take_due(Tti tti)
{
    std::vector<HarqProcess> due;
    auto split = std::stable_partition(pending_.begin(), pending_.end(), [&](const HarqProcess& p) { return p.due_tti != tti; });
    std::move(split, pending_.end(), std::back_inserter(due));
    pending_.erase(split, pending_.end());
    std::sort(due.begin(), due.end(), [](const HarqProcess& a, const HarqProcess& b) {
        return std::tie(a.cell, a.subband, a.direction) < std::tie(b.cell, b.subband, b.direction);
    });
    return due;
}

std::int64_t HarqBuffer::pending_bits(NodeId ue) const
{
    std::int64_t b = 0;
    for (const auto& p : pending_)
        if (p.ue == ue) b += p.payload_bits;
    return b;
}

HarqStepResult harq_step(std::vector<HarqProcess> active, std::span<const double> sinr_db, HarqBuffer& buffer,
                         std::span<Stream> cell_streams, const McsTable& table, Tti tti)
{
    FDSIM_EXPECTS(active.size() == sinr_db.size(), "one SINR per transmission required");
    const HarqConfig& cfg = buffer.config();
    HarqStepResult r;
    for (std::size_t i = 0; i < active.size(); ++i) {
        HarqProcess& p = active[i];
        FDSIM_EXPECTS(p.cell < cell_streams.size(), "no HARQ stream for cell");
        const double effective = sinr_db[i] + cfg.combining_gain_db * p.transmissions;
        ++p.transmissions;
        const bool error = bernoulli(cell_streams[p.cell], bler(p.mcs, effective, table));
        if (!error) {
            r.acked.push_back(std::move(p));
        } else if (p.transmissions >= cfg.max_transmissions) {
            r.dropped.push_back(std::move(p));
        } else {
            ++r.nacks;
            p.due_tti = tti + cfg.rtt_tti;
            buffer.hold(std::move(p));
        }
    }
    return r;
}

}  // namespace fdsim
