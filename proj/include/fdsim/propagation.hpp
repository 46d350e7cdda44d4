// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdsim/common.hpp"
#include "fdsim/geometry.hpp"
#include "fdsim/stats.hpp"

namespace fdsim {

struct NetworkLayout;

/// PL(d) = intercept_db + slope_db_per_decade * log10(d / 1 m), d the 3-D distance.
struct LogDistance {
    double intercept_db = 0.0;
    double slope_db_per_decade = 20.0;

    double at(double d3_m) const { return intercept_db + slope_db_per_decade * std::log10(d3_m); }
};

enum class LosProbability {
    Always,
    Never,
    IndoorHotspot,  // 1 below 18 m, exp(-(d-18)/27) to 37 m, 0.5 beyond
    UrbanMicro,     // min(18/d, 1) * (1 - exp(-d/36)) + exp(-d/36)
};

double los_probability(LosProbability kind, double d2_m);

/// Large-scale model for one class of links (BS-UE, BS-BS or UE-UE).
struct LinkModel {
    LogDistance los{};
    LogDistance nlos{};
    LosProbability los_probability = LosProbability::UrbanMicro;
    double shadow_sigma_los_db = 3.0;
    double shadow_sigma_nlos_db = 4.0;
    double min_distance_m = 1.0;
};

struct ChannelParams {
    LinkModel bs_ue;
    LinkModel bs_bs;
    LinkModel ue_ue;
    double bs_antenna_gain_dbi = 0.0;
    // Extra loss between nodes in different buildings (indoor scenario only).
    double inter_building_loss_db = 20.0;
};

enum class NodeKind : std::uint8_t { Bs, Ue };

/// What the path-loss model needs to know about an endpoint.
struct RadioNode {
    Point2 pos;
    double height_m = 1.5;
    NodeKind kind = NodeKind::Ue;
    int building = -1;
};

struct PathLoss {
    double loss_db = 0.0;  // distance law + shadowing
    bool los = false;
    double shadowing_db = 0.0;
    bool clamped = false;  // distance was raised to the model minimum
};

/// Large-scale loss between two nodes. LoS state and shadowing are keyed by the
/// unordered pair of endpoint positions, so the result is symmetric, stable
/// under relabeling, and identical wherever the same pair is evaluated.
PathLoss path_loss(const RadioNode& tx, const RadioNode& rx, const ChannelParams& channel, const WrapConfig& wrap,
                   std::uint64_t shadow_seed);

/// Link gain in dB (antenna gains minus path loss).
double link_gain_db(const RadioNode& a, const RadioNode& b, const ChannelParams& channel, const WrapConfig& wrap,
                    std::uint64_t shadow_seed);

struct NullingConfig {
    double tx_null_db = 20.0;
    double rx_null_db = 20.0;

    double total_db() const { return tx_null_db + rx_null_db; }
    void validate() const;
};

struct SelfInterferenceConfig {
    double sic_db = 110.0;

    void validate() const;
};

/// Dense row-major matrix of dB gains.
class GainTable {
  public:
    GainTable() = default;
    GainTable(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<double>& data() const { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Static per-drop channel gains. Diagonals of the square tables are unused
/// and hold 0 dB.
struct LinkGainMatrix {
    GainTable bs_to_ue;  // [bs][ue]
    GainTable ue_to_ue;  // [ue][ue], symmetric
    GainTable bs_to_bs;  // [tx bs][rx bs], nulling included
    double nulling_db = 0.0;
    std::size_t clamped_links = 0;

    std::size_t n_bs() const { return bs_to_ue.rows(); }
    std::size_t n_ue() const { return bs_to_ue.cols(); }
};

LinkGainMatrix build_gain_matrix(const NetworkLayout& layout, const NullingConfig& nulling, const WrapConfig& wrap,
                                 std::uint64_t rng_seed);

/// Per-RB transmit powers used for the interference comparison.
struct InterferencePowers {
    double bs_dbm_per_rb = 0.0;
    std::vector<double> ue_dbm_per_rb;  // indexed by UE id, UL UEs used
};

struct InterferenceRatioCdfs {
    EmpiricalCdf bsbs_over_ul;  // per BS, dB
    EmpiricalCdf ueue_over_dl;  // per DL UE, dB
    std::size_t skipped = 0;    // nodes without interferers
};

/// Ratio of mean BS-BS to mean conventional UL interference per BS, and of
/// mean UE-UE to mean conventional DL interference per DL UE. Means are taken
/// per interferer in linear scale.
InterferenceRatioCdfs interference_ratio_cdfs(const NetworkLayout& layout, const LinkGainMatrix& gains,
                                              const InterferencePowers& powers);

void write_gain_csv(const std::string& path, const LinkGainMatrix& gains);

}  // namespace fdsim
