// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdsim/common.hpp"
#include "fdsim/decision.hpp"
#include "fdsim/propagation.hpp"
#include "fdsim/topology.hpp"

namespace fdsim {

enum class DuplexMode { FullDuplex, Fdd, FlexibleDuplex };

std::string_view to_string(DuplexMode m);
DuplexMode duplex_from_string(std::string_view s);

enum class SubbandUse : std::uint8_t { Both, DownlinkOnly, UplinkOnly };

struct Subband {
    int first_rb = 0;
    int n_rb = 0;
    SubbandUse use = SubbandUse::Both;
};

/// Frequency layout for one duplex mode. FD and flexible duplex share one
/// 20 MHz carrier; FDD splits it into a DL band (first half of the subbands)
/// and an UL band (second half).
struct ResourceGrid {
    DuplexMode mode = DuplexMode::FullDuplex;
    std::vector<Subband> subbands;

    /// total_rb is the RB count of the full 20 MHz carrier; the FDD bands get
    /// half each. Remainder RBs are appended to the last subband of a band.
    static ResourceGrid make(DuplexMode mode, int total_rb = 100, int rb_per_subband = 12);

    int size() const { return static_cast<int>(subbands.size()); }
    bool allows(int s, Direction d) const;
    int rbs_for(Direction d) const;
};

struct PowerConfig {
    double p_max_dbm = 23.0;
    double p0_dbm = -85.0;
    double alpha = 0.8;
    double boost_db = 0.0;
    // bs_power_dbm is spread over reference_rbs (24 dBm per 10 MHz); the
    // per-RB level is the same in every duplex mode.
    double bs_power_dbm = 24.0;
    int reference_rbs = 50;

    double bs_dbm_per_rb() const { return bs_power_dbm - 10.0 * std::log10(static_cast<double>(reference_rbs)); }
    void validate() const;
};

struct NoiseConfig {
    double ue_noise_figure_db = 9.0;
    double bs_noise_figure_db = 5.0;

    double ue_dbm_per_rb() const;
    double bs_dbm_per_rb() const;
};

/// Fractional open-loop power control, per RB: min(p_max, p0 + boost + alpha * PL).
double olpc_power(double path_loss_db, const PowerConfig& cfg);

/// Same, with PL taken from the UE's serving link.
double olpc_power(const NetworkLayout& layout, const LinkGainMatrix& gains, NodeId ue, const PowerConfig& cfg);

/// Per-RB power once the total over n_rbs is capped at p_max.
double ue_power_per_rb(double nominal_dbm_per_rb, int n_rbs, double p_max_dbm);

struct BoostSelection {
    double boost_db = 0.0;
    bool capped = false;  // target not reachable below the DL-degradation cap
    double median_ul_sinr_db = 0.0;
    double median_dl_rise_db = 0.0;
    std::string warning;
};

struct BoostCriteria {
    double target_ul_sinr_db = 5.0;
    double max_dl_degradation_db = 3.0;
    double step_db = 0.5;
    double max_boost_db = 40.0;
    bool self_interference = true;  // FD: own DL echo counts against UL
};

/// Long-term UL SINR of every UL UE at the given boost: other cells at full
/// BS power through nulled BS-BS gains, one average UL UE active per other
/// cell, and (optionally) the residual self echo.
std::vector<double> long_term_ul_sinr_db(const NetworkLayout& layout, const LinkGainMatrix& gains, const PowerConfig& power,
                                         const NoiseConfig& noise, const SelfInterferenceConfig& sic, double boost_db,
                                         bool self_interference);

/// Rise of DL interference-plus-noise caused by UE-UE interference, per DL UE,
/// with one average UL UE active per cell.
std::vector<double> dl_interference_rise_db(const NetworkLayout& layout, const LinkGainMatrix& gains,
                                            const PowerConfig& power, const NoiseConfig& noise, double boost_db);

BoostSelection select_boost(const NetworkLayout& layout, const LinkGainMatrix& gains, const PowerConfig& power,
                            const NoiseConfig& noise, const SelfInterferenceConfig& sic, const BoostCriteria& criteria);

struct SubbandSinr {
    std::optional<double> dl_sinr_db;
    std::optional<double> ul_sinr_db;
};

/// Per-TTI channel state observed by every UE and BS, for CSI feedback.
/// Indexed by position in layout.dl_ues / layout.ul_ues, then subband.
struct TtiMeasurement {
    int n_subbands = 0;
    std::vector<double> dl_sinr_db;           // all UE-UE interference included
    std::vector<double> dl_sinr_no_intra_db;  // own-cell UL UE excluded
    std::vector<double> ul_sinr_db;           // at nominal OLPC power

    double dl(std::size_t dl_idx, int s) const { return dl_sinr_db[dl_idx * n_subbands + s]; }
    double dl_no_intra(std::size_t dl_idx, int s) const { return dl_sinr_no_intra_db[dl_idx * n_subbands + s]; }
    double ul(std::size_t ul_idx, int s) const { return ul_sinr_db[ul_idx * n_subbands + s]; }
};

/// Linear-scale view of one drop's channel used for every SINR evaluation.
/// Interference sums always run in the same order (cells ascending, then UL
/// UEs ascending), so per-victim and bulk evaluation agree bit for bit.
class InterferenceModel {
  public:
    InterferenceModel(const NetworkLayout& layout, const LinkGainMatrix& gains, const ResourceGrid& grid,
                      const NoiseConfig& noise, const SelfInterferenceConfig& sic);

    const NetworkLayout& layout() const { return *layout_; }
    const ResourceGrid& grid() const { return grid_; }
    std::size_t dl_index(NodeId ue) const { return dl_index_[ue]; }
    std::size_t ul_index(NodeId ue) const { return ul_index_[ue]; }

    /// Aborts (InvariantViolation) if a decision uses a resource the grid or
    /// the layout does not allow.
    void check(std::span<const ScheduleDecision> decisions) const;

    SubbandSinr compute_sinr(CellId cell, int subband, std::span<const ScheduleDecision> decisions) const;

    /// SINR for every scheduled transmission, [cell][subband].
    std::vector<std::vector<SubbandSinr>> evaluate(std::span<const ScheduleDecision> decisions) const;

    /// What every UE/BS would measure under these decisions.
    TtiMeasurement measure(std::span<const ScheduleDecision> decisions, std::span<const double> ul_nominal_dbm_per_rb,
                           double bs_dbm_per_rb) const;

    double bs_to_ue(CellId c, NodeId u) const { return bs_ue_[c * n_ue_ + u]; }
    double ul_to_dl(std::size_t ul_idx, std::size_t dl_idx) const { return ueue_[ul_idx * n_dl_ + dl_idx]; }
    double bs_to_bs(CellId tx, CellId rx) const { return bsbs_[tx * n_bs_ + rx]; }
    double self_echo() const { return self_echo_; }
    double noise_ue() const { return noise_ue_; }
    double noise_bs() const { return noise_bs_; }

  private:
    struct Transmitters {
        std::vector<std::pair<CellId, double>> dl;  // (cell, linear per-RB power)
        std::vector<std::pair<NodeId, double>> ul;  // (ue, linear per-RB power)
    };

    Transmitters on_subband(int s, std::span<const ScheduleDecision> decisions) const;
    double dl_interference(NodeId victim, const Transmitters& tx, bool include_intra) const;
    double ul_interference(CellId victim_cell, const Transmitters& tx, bool own_dl_active) const;

    const NetworkLayout* layout_;
    ResourceGrid grid_;
    std::size_t n_bs_;
    std::size_t n_ue_;
    std::size_t n_dl_;
    std::vector<double> bs_ue_;
    std::vector<double> ueue_;
    std::vector<double> bsbs_;
    std::vector<std::size_t> dl_index_;
    std::vector<std::size_t> ul_index_;
    double self_echo_;
    double noise_ue_;
    double noise_bs_;
};

/// Free-function form over a prepared model.
inline SubbandSinr compute_sinr(const InterferenceModel& model, CellId cell, int subband,
                                std::span<const ScheduleDecision> decisions)
{
    return model.compute_sinr(cell, subband, decisions);
}

}  // namespace fdsim
