// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdsim/common.hpp"
#include "fdsim/csi.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

struct McsEntry {
    int index = 0;
    double spectral_efficiency = 0.0;
    double sinr_10pct_db = 0.0;  // BLER target point
    double sinr_50pct_db = 0.0;
    double bler_slope = 1.5;     // per dB
};

/// MCS m uses the efficiency of CQI m + 1, and its 10% BLER point sits on
/// that CQI's threshold.
struct McsTable {
    std::vector<McsEntry> entries;

    static McsTable from_cqi(const CqiTable& cqi, double bler_slope = 1.5);
    void validate() const;
    int size() const { return static_cast<int>(entries.size()); }
    const McsEntry& at(int mcs) const { return entries.at(static_cast<std::size_t>(mcs)); }
};

inline constexpr double kBlerTarget = 0.10;

/// Logistic block error rate: 1 / (1 + exp(slope * (sinr - sinr_50))).
double bler(int mcs, double sinr_db, const McsTable& table);

/// Highest MCS whose BLER at this SINR is at most 10%; 0 if none.
int select_mcs(double sinr_db, const McsTable& table);

/// MCS matching a reported CQI; CQI 0 has no MCS and maps to -1.
inline int mcs_for_cqi(int cqi) { return cqi - 1; }

/// floor(efficiency * RB bandwidth * TTI * n_rbs * (1 - overhead)).
int tb_size(int mcs, int n_rbs, const McsTable& table, double overhead_fraction = 0.25);

struct HarqConfig {
    int rtt_tti = 8;
    int max_transmissions = 4;
    double combining_gain_db = 3.0;  // per retransmission

    void validate() const;
};

/// Part of a transport block taken from one queued burst.
struct Segment {
    std::size_t burst = 0;
    std::int64_t bits = 0;
};

/// One transport block in flight on one subband. Retransmissions are
/// synchronous: same subband, same MCS and power, rtt_tti later.
struct HarqProcess {
    NodeId ue = 0;
    CellId cell = 0;
    int subband = 0;
    Direction direction = Direction::Downlink;
    int mcs = 0;
    int n_rb = 0;
    std::int64_t payload_bits = 0;
    double power_dbm_per_rb = kFloorDbm;
    int transmissions = 0;
    Tti due_tti = 0;
    std::vector<Segment> segments;
};

/// NACKed processes waiting for their retransmission slot.
class HarqBuffer {
  public:
    explicit HarqBuffer(HarqConfig cfg = {});

    void hold(HarqProcess p);
    /// Removes and returns the processes due at tti, ordered by (cell, subband, direction).
    std::vector<HarqProcess> take_due(Tti tti);
    std::size_t size() const { return pending_.size(); }
    std::int64_t pending_bits(NodeId ue) const;
    const HarqConfig& config() const { return cfg_; }

  private:
    HarqConfig cfg_;
    std::vector<HarqProcess> pending_;
};

struct HarqStepResult {
    std::vector<HarqProcess> acked;
    std::vector<HarqProcess> dropped;  // failed max_transmissions times
    int nacks = 0;
};

/// Decodes every active transmission at its realized SINR (plus combining
/// gain for retransmissions). NACKs below the attempt limit go back to the
/// buffer. Draws come from the transmitting cell's stream, in input order.
HarqStepResult harq_step(std::vector<HarqProcess> active, std::span<const double> sinr_db, HarqBuffer& buffer,
                         std::span<Stream> cell_streams, const McsTable& table, Tti tti);

}  // namespace fdsim
