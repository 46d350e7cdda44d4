// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "fdsim/common.hpp"
#include "fdsim/csi.hpp"
#include "fdsim/decision.hpp"
#include "fdsim/link.hpp"
#include "fdsim/radio.hpp"

namespace fdsim {

enum class SchedulerKind { Basic, Joint, Flexible, Fdd };

std::string_view to_string(SchedulerKind k);
SchedulerKind scheduler_from_string(std::string_view s);

struct PfConfig {
    int time_constant_tti = 100;
    double floor_bps = 1e3;

    void validate() const;
};

/// Exponentially averaged served rate per UE (indexed by UE id).
class PfState {
  public:
    PfState(std::size_t n_ue, PfConfig cfg = {});

    double r_avg(NodeId ue) const { return r_avg_[ue]; }
    void set(NodeId ue, double bps) { r_avg_[ue] = std::max(bps, cfg_.floor_bps); }
    std::span<const double> values() const { return r_avg_; }
    const PfConfig& config() const { return cfg_; }

  private:
    friend void update_pf(PfState& pf, std::span<const double> served_bits);
    PfConfig cfg_;
    std::vector<double> r_avg_;
};

/// R <- (1 - 1/T) R + (1/T) served_rate for every UE; served_bits is per UE
/// for one TTI. Unserved UEs decay towards the floor.
void update_pf(PfState& pf, std::span<const double> served_bits);

/// Estimated instantaneous rate of one subband at this CQI, bits/s.
double estimated_rate_bps(int cqi, int n_rb, const CqiTable& table);

double pf_metric(double rate_bps, double r_avg_bps);

/// A retransmission that must go out on a fixed subband and direction.
struct Reservation {
    int subband = 0;
    Direction direction = Direction::Downlink;
    NodeId ue = 0;
    int mcs = 0;
    double power_dbm_per_rb = kFloorDbm;
};

inline constexpr double kInfiniteBacklog = std::numeric_limits<double>::infinity();

/// Everything one cell knows when it schedules a TTI. Per-UE vectors are
/// indexed like dl_ues / ul_ues; CQI vectors are [local index * n_subbands + s].
struct CellSchedulingInput {
    CellId cell = 0;
    const ResourceGrid* grid = nullptr;
    const CqiTable* cqi_table = nullptr;
    const McsTable* mcs_table = nullptr;
    double tb_overhead = 0.25;

    std::vector<NodeId> dl_ues;
    std::vector<NodeId> ul_ues;
    std::vector<std::uint8_t> dl_cqi;        // aggregate measurement (basic, FDD, flexible)
    std::vector<std::uint8_t> dl_cqi_alone;  // own-cell UL silent (joint)
    std::vector<std::uint8_t> ul_cqi;
    std::vector<double> dl_r_avg;
    std::vector<double> ul_r_avg;
    std::vector<double> dl_backlog_bits;  // kInfiniteBacklog under full buffer
    std::vector<double> ul_backlog_bits;
    const PairFeedback* pairs = nullptr;  // joint only; ul/dl order must match
    std::vector<Reservation> reservations;

    int n_subbands() const { return grid->size(); }
    int dl_cqi_at(std::size_t d, int s) const { return dl_cqi[d * n_subbands() + s]; }
    int dl_cqi_alone_at(std::size_t d, int s) const { return dl_cqi_alone[d * n_subbands() + s]; }
    int ul_cqi_at(std::size_t u, int s) const { return ul_cqi[u * n_subbands() + s]; }
    void validate() const;
};

/// DL CQI of d when paired with u, from the (possibly stale) pair report.
int paired_dl_cqi(const CellSchedulingInput& in, std::size_t d, std::size_t u, int s);

/// Independent DL and UL argmax per subband. Also serves FDD, where the grid
/// restricts every subband to one direction.
ScheduleDecision schedule_basic(const CellSchedulingInput& in);

/// Best of DL-only, UL-only and every allowed (DL, UL) pair, by the sum of
/// PF metrics with the DL rate taken at the paired CQI.
ScheduleDecision schedule_joint(const CellSchedulingInput& in);

/// Per subband, the better of the best DL and best UL metric; DL wins ties.
ScheduleDecision schedule_flexible(const CellSchedulingInput& in);

ScheduleDecision schedule(SchedulerKind kind, const CellSchedulingInput& in);

}  // namespace fdsim
