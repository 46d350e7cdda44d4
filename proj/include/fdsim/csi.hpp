// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "fdsim/common.hpp"
#include "fdsim/propagation.hpp"
#include "fdsim/topology.hpp"

namespace fdsim {

struct CqiEntry {
    double min_sinr_db = 0.0;
    double spectral_efficiency = 0.0;  // bits/s/Hz
    int modulation_order = 2;
};

/// CQI 1..15; CQI 0 means out of range. entries[i] describes CQI i + 1.
struct CqiTable {
    std::vector<CqiEntry> entries;

    static CqiTable lte();
    void validate() const;
    int max_cqi() const { return static_cast<int>(entries.size()); }
    double efficiency(int cqi) const { return cqi <= 0 ? 0.0 : entries[static_cast<std::size_t>(cqi - 1)].spectral_efficiency; }
    double threshold_db(int cqi) const { return entries.at(static_cast<std::size_t>(cqi - 1)).min_sinr_db; }
};

/// Largest CQI whose threshold is <= sinr; 0 below the first threshold.
int sinr_to_cqi(double sinr_db, const CqiTable& table);

/// Pair-wise UE-UE interference inside one cell, dBm per RB:
/// entry (u, d) = UL UE u's per-RB power + gain(u -> d).
struct PairMeasurement {
    CellId cell = 0;
    std::vector<NodeId> ul_ues;
    std::vector<NodeId> dl_ues;
    std::vector<double> interference_dbm;  // [u * dl_ues.size() + d]

    double at(std::size_t u, std::size_t d) const { return interference_dbm[u * dl_ues.size() + d]; }
};

/// ul_power_dbm_per_rb is indexed by UE id; a power at or below kFloorDbm is
/// treated as silent.
PairMeasurement measure_pair_interference(const NetworkLayout& layout, CellId cell, const LinkGainMatrix& gains,
                                          std::span<const double> ul_power_dbm_per_rb);

enum class PairFeedbackKind { OneBit, MultiBit };

struct PairFeedbackMode {
    PairFeedbackKind kind = PairFeedbackKind::MultiBit;
    int bits = 4;
    int threshold_steps = 1;  // 1-bit schedulability threshold, in CQI steps

    int effective_bits() const { return kind == PairFeedbackKind::OneBit ? 1 : bits; }
};

/// DL UE reference for pair quantization, with no intra-cell UE-UE interference.
struct DlBaseline {
    double signal_dbm = kFloorDbm;
    double sinr_db = kFloorDbm;
};

/// Wide-band report for every (UL, DL) pair of one cell. With k >= 2 a bucket
/// is the CQI degradation in steps, saturating at 2^k - 1. With one bit the
/// bucket is 1 when the degradation exceeds the threshold.
struct PairFeedback {
    PairFeedbackMode mode;
    CellId cell = 0;
    std::vector<NodeId> ul_ues;
    std::vector<NodeId> dl_ues;
    std::vector<std::uint8_t> buckets;  // [u * dl_ues.size() + d]
    Tti last_update = -1;

    std::uint8_t bucket(std::size_t u, std::size_t d) const { return buckets[u * dl_ues.size() + d]; }
    /// OneBit view: 1 iff the pair may share resources.
    int bit(std::size_t u, std::size_t d) const { return bucket(u, d) == 0 ? 1 : 0; }
    bool schedulable(std::size_t u, std::size_t d) const;
    /// CQI steps to subtract from d's report when paired with u.
    int degradation_steps(std::size_t u, std::size_t d) const { return dequantize(bucket(u, d)); }
    int dequantize(std::uint8_t b) const;
};

/// Quantizes one degradation (in CQI steps) under the given mode.
std::uint8_t quantize_degradation(int steps, const PairFeedbackMode& mode);

/// baseline is indexed like measurements.dl_ues.
PairFeedback quantize_pair_feedback(const PairMeasurement& measurements, std::span<const DlBaseline> baseline,
                                    const PairFeedbackMode& mode, const CqiTable& table);

/// Sub-band CQI seen by the scheduler, for every UE and subband.
struct CqiSnapshot {
    int n_subbands = 0;
    std::vector<std::uint8_t> dl;        // [dl index * n_subbands + s]
    std::vector<std::uint8_t> dl_alone;  // same, own-cell UL excluded
    std::vector<std::uint8_t> ul;        // [ul index * n_subbands + s]

    int dl_cqi(std::size_t dl_idx, int s) const { return dl[dl_idx * n_subbands + s]; }
    int dl_alone_cqi(std::size_t dl_idx, int s) const { return dl_alone[dl_idx * n_subbands + s]; }
    int ul_cqi(std::size_t ul_idx, int s) const { return ul[ul_idx * n_subbands + s]; }
};

struct FeedbackConfig {
    int delay_tti = 6;
    int pair_update_period_tti = 50;
    int default_cqi = 4;
    PairFeedbackMode pair_mode;
};

/// Delayed CSI. Reports are stamped with the TTI from which they may be
/// observed; the scheduler at TTI t sees the newest report stamped <= t - delay.
class FeedbackState {
  public:
    FeedbackState(FeedbackConfig cfg, std::size_t n_dl, std::size_t n_ul, int n_subbands);

    void push(Tti stamp, CqiSnapshot snapshot);
    const CqiSnapshot& age_and_report(Tti tti) const;

    /// True when pair feedback should be refreshed at this TTI.
    bool pair_refresh_due(Tti tti) const;
    void set_pair_feedback(Tti tti, std::vector<PairFeedback> per_cell);
    const std::vector<PairFeedback>& pair_feedback() const { return pairs_; }

    const FeedbackConfig& config() const { return cfg_; }

  private:
    FeedbackConfig cfg_;
    CqiSnapshot default_;
    std::deque<std::pair<Tti, CqiSnapshot>> history_;
    std::vector<PairFeedback> pairs_;
    Tti last_pair_update_ = -1;
};

/// Extra uplink feedback bits for pair-wise reports relative to LTE sub-band
/// CQI reporting (4-bit wide-band CQI plus a 4-bit CQI per LTE subband of
/// lte_subband_rb RBs, every cqi_period_tti), for one cell.
struct OverheadModel {
    int n_ul = 10;
    int n_dl = 10;
    int pair_bits = 4;
    int pair_period_tti = 50;
    int total_rb = 100;
    int lte_subband_rb = 8;
    int cqi_bits = 4;
    int cqi_period_tti = 1;

    double pair_bits_per_tti() const;
    double baseline_bits_per_tti() const;
    double fraction() const { return pair_bits_per_tti() / baseline_bits_per_tti(); }
};

void write_pair_feedback_csv(const std::string& path, const std::vector<PairFeedback>& per_cell);

}  // namespace fdsim
