// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdsim/csi.hpp"
#include "fdsim/link.hpp"
#include "fdsim/propagation.hpp"
#include "fdsim/radio.hpp"
#include "fdsim/scheduling.hpp"
#include "fdsim/topology.hpp"
#include "fdsim/traffic.hpp"

namespace fdsim {

struct BoostConfig {
    bool automatic = false;  // pick the boost per drop with select_boost
    BoostCriteria criteria;
};

struct GridConfig {
    int total_rb = 100;
    int rb_per_subband = 12;
};

struct LinkConfig {
    double bler_slope = 1.5;
    double tb_overhead = 0.25;
};

struct TrafficConfig {
    TrafficKind kind = TrafficKind::FullBuffer;
    FtpConfig ftp;
    /// DL offered loads for a sweep; UL follows at dl / dl_ul_ratio.
    std::vector<double> sweep_dl_loads_bps;
    double dl_ul_ratio = 2.0;
};

struct RunConfig {
    ScenarioKind scenario = ScenarioKind::IndoorHotzone;
    ScenarioParams layout = ScenarioParams::defaults(ScenarioKind::IndoorHotzone);
    std::vector<DuplexMode> modes{DuplexMode::FullDuplex, DuplexMode::Fdd};
    SchedulerKind fd_scheduler = SchedulerKind::Basic;
    NullingConfig nulling;
    SelfInterferenceConfig sic;
    PowerConfig power;
    BoostConfig boost;
    NoiseConfig noise;
    FeedbackConfig feedback;
    PfConfig pf;
    HarqConfig harq;
    LinkConfig link;
    GridConfig grid;
    TrafficConfig traffic;
    /// false removes UE-UE, BS-BS and self interference (analysis only).
    bool cross_links = true;
    int drops = 2;
    int ttis = 5000;
    std::uint64_t seed = 1;
    int workers = 0;  // 0: one per hardware thread

    void validate() const;
};

/// Scheduler used for a duplex mode; FD uses the configured one.
SchedulerKind scheduler_for(DuplexMode mode, SchedulerKind fd_scheduler);

std::uint64_t drop_seed(std::uint64_t master, int drop);

/// Layout and channel of one drop, shared by every duplex mode.
struct DropSetup {
    int drop = 0;
    std::uint64_t seed = 0;
    NetworkLayout layout;
    LinkGainMatrix gains;
};

DropSetup prepare_drop(const RunConfig& cfg, int drop);

struct DropResult {
    DuplexMode mode = DuplexMode::FullDuplex;
    int drop = 0;
    int ttis = 0;
    std::vector<NodeId> dl_ues;
    std::vector<NodeId> ul_ues;
    std::vector<double> dl_tput_bps;  // aligned with dl_ues
    std::vector<double> ul_tput_bps;
    std::vector<BurstRecord> bursts;
    PerceivedThroughput dl_perceived;
    PerceivedThroughput ul_perceived;
    BoostSelection boost;
    double boost_db = 0.0;
    std::int64_t acks = 0;
    std::int64_t nacks = 0;
    std::int64_t harq_failures = 0;
    double mean_dl_sinr_db = 0.0;  // over first transmissions
    double mean_ul_sinr_db = 0.0;
    std::int64_t arrived_bits = 0;
    std::int64_t served_bits = 0;
    std::int64_t queued_bits = 0;
    std::int64_t in_flight_bits = 0;
    std::vector<std::string> warnings;
};

/// One drop in one duplex mode. Aborts with InvariantViolation on a broken
/// contract (illegal decision, lost bits).
DropResult run_drop(const RunConfig& cfg, const DropSetup& setup, DuplexMode mode);

struct ModeSummary {
    DuplexMode mode = DuplexMode::FullDuplex;
    SchedulerKind scheduler = SchedulerKind::Basic;
    std::vector<double> dl_tput_bps;  // all drops, per UE
    std::vector<double> ul_tput_bps;
    std::vector<double> dl_perceived_bps;  // per-UE mean burst throughput
    std::vector<double> ul_perceived_bps;
    std::size_t bursts_completed = 0;
    std::size_t bursts_unfinished = 0;
    std::vector<double> boost_db;  // per drop
    std::vector<BoostSelection> boost_selection;
    std::vector<double> mean_dl_sinr_db;  // per drop
    std::vector<double> mean_ul_sinr_db;
    std::int64_t acks = 0;
    std::int64_t nacks = 0;
    std::int64_t harq_failures = 0;
};

struct GainRow {
    DuplexMode mode = DuplexMode::FullDuplex;
    Direction direction = Direction::Downlink;
    std::string metric;  // mean, p5, p50, p95
    std::optional<double> gain;  // empty when the FDD value is zero
};

struct RunReport {
    std::string config_json;
    TrafficKind traffic = TrafficKind::FullBuffer;
    double dl_load_bps = 0.0;
    double ul_load_bps = 0.0;
    std::vector<ModeSummary> modes;
    std::vector<GainRow> gains;
    double pair_feedback_overhead = 0.0;
    std::vector<std::string> warnings;

    const ModeSummary* find(DuplexMode m) const;
    std::optional<double> gain(DuplexMode m, Direction d, const std::string& metric) const;
};

/// Runs every configured mode on the same drops and reports gains against FDD.
RunReport compare_modes(const RunConfig& cfg);

struct SweepReport {
    std::vector<RunReport> points;  // one per DL load
};

SweepReport load_sweep(const RunConfig& cfg);

struct Fig1Report {
    InterferenceRatioCdfs ratios;
    std::vector<std::string> warnings;
};

/// Unmitigated interference comparison on the first drop: nulling off, no boost.
Fig1Report fig1(const RunConfig& cfg);

}  // namespace fdsim
