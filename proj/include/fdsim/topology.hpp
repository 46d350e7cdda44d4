// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fdsim/common.hpp"
#include "fdsim/geometry.hpp"
#include "fdsim/propagation.hpp"

namespace fdsim {

enum class ScenarioKind { IndoorHotzone, OutdoorCluster, OutdoorUniform };

std::string_view to_string(ScenarioKind k);
ScenarioKind scenario_from_string(std::string_view s);

/// Geometry and channel parameters of one deployment scenario. Defaults are
/// set per scenario by ScenarioParams::defaults().
struct ScenarioParams {
    double isd_m = 500.0;
    int bs_per_area = 4;  // per sector (outdoor) or per building (indoor)
    int ul_ues_per_bs = 10;
    int dl_ues_per_bs = 10;
    double bs_height_m = 10.0;
    double ue_height_m = 1.5;

    double building_length_m = 120.0;
    double building_width_m = 50.0;

    double cluster_radius_m = 50.0;
    double cluster_min_site_distance_m = 105.0;
    double ue_drop_radius_m = 70.0;

    double min_site_distance_m = 75.0;  // small cell to macro site
    double min_bs_distance_m = 20.0;
    double min_ue_bs_distance_m = 10.0;
    int max_retries = 200000;

    double bs_power_dbm = 24.0;  // used for strongest-cell association
    ChannelParams channel;

    static ScenarioParams defaults(ScenarioKind kind);
};

struct SmallCell {
    CellId id = 0;
    Point2 pos;
    double height_m = 0.0;
    int site = 0;
    int sector = 0;
    int building = -1;
};

struct UserEquipment {
    NodeId id = 0;
    Point2 pos;
    double height_m = 0.0;
    CellId cell = 0;
    Direction direction = Direction::Downlink;
    int building = -1;
};

struct NetworkLayout {
    ScenarioKind kind = ScenarioKind::OutdoorUniform;
    ScenarioParams params;
    WrapConfig wrap;
    std::vector<Point2> sites;
    std::vector<SmallCell> cells;
    std::vector<UserEquipment> ues;
    // Filled by index(): UE ids per cell, in increasing id order.
    std::vector<std::vector<NodeId>> dl_ues_of_cell;
    std::vector<std::vector<NodeId>> ul_ues_of_cell;
    std::vector<NodeId> dl_ues;
    std::vector<NodeId> ul_ues;

    void index();

    RadioNode radio_node(const SmallCell& c) const { return {c.pos, c.height_m, NodeKind::Bs, c.building}; }
    RadioNode radio_node(const UserEquipment& u) const { return {u.pos, u.height_m, NodeKind::Ue, u.building}; }

    void write_csv(const std::string& path) const;
};

/// Boresight (degrees) of sector k of a 3-sector site.
double sector_boresight_deg(int sector);

bool in_sector(Point2 site, int sector, double isd_m, Point2 p);

/// Drops small cells and UEs for one scenario. Deterministic in the seed.
/// Throws ConfigError when a placement constraint cannot be met within the
/// retry budget.
NetworkLayout generate_layout(ScenarioKind kind, std::uint64_t rng_seed, const ScenarioParams& params);

/// Cell with the strongest long-term received power at the given UE position.
CellId strongest_cell(const NetworkLayout& layout, const RadioNode& ue, std::uint64_t shadow_seed);

}  // namespace fdsim
