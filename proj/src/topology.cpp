// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/topology.hpp"

#include <fstream>

#include "fdsim/rng.hpp"

namespace fdsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

LinkModel indoor_hotspot_model()
{
    // InH at 3.5 GHz: 20*log10(3.5) folded into the intercepts.
    LinkModel m;
    m.los = {43.7, 16.9};
    m.nlos = {22.4, 43.3};
    m.los_probability = LosProbability::IndoorHotspot;
    m.shadow_sigma_los_db = 3.0;
    m.shadow_sigma_nlos_db = 4.0;
    m.min_distance_m = 3.0;
    return m;
}

LinkModel urban_micro_model()
{
    LinkModel m;
    m.los = {38.9, 22.0};
    m.nlos = {36.85, 36.7};
    m.los_probability = LosProbability::UrbanMicro;
    m.shadow_sigma_los_db = 3.0;
    m.shadow_sigma_nlos_db = 4.0;
    m.min_distance_m = 10.0;
    return m;
}

class Dropper {
  public:
    Dropper(const ScenarioParams& p, std::uint64_t seed) : p_(p), rng_(stream_seed(seed, StreamTag::Layout)) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(rng_); }

    Point2 in_disk(Point2 c, double r)
    {
        const double rad = r * std::sqrt(uniform01(rng_));
        const double a = 2.0 * kPi * uniform01(rng_);
        return {c.x + rad * std::cos(a), c.y + rad * std::sin(a)};
    }

    Point2 in_sector(Point2 site, int sector)
    {
        const double r = p_.isd_m / std::sqrt(3.0);
        for (int i = 0; i < p_.max_retries; ++i) {
            const Point2 q{site.x + uniform(-r, r), site.y + uniform(-r, r)};
            if (fdsim::in_sector(site, sector, p_.isd_m, q)) return q;
        }
        throw ConfigError("layout: could not sample inside sector");
    }

    Point2 in_rect(Point2 centre, double len, double width)
    {
        return {centre.x + uniform(-len / 2, len / 2), centre.y + uniform(-width / 2, width / 2)};
    }

  private:
    const ScenarioParams& p_;
    Stream rng_;
};

Point2 sector_centre(Point2 site, int sector, double isd_m)
{
    // Centroid of the rhombic sector: half way to the hexagon vertex on boresight.
    const double a = sector_boresight_deg(sector) * kPi / 180.0;
    const double d = isd_m / (2.0 * std::sqrt(3.0));
    return {site.x + d * std::cos(a), site.y + d * std::sin(a)};
}

}  // namespace

std::string_view to_string(ScenarioKind k)
{
    switch (k) {
    case ScenarioKind::IndoorHotzone:
        return "indoor";
    case ScenarioKind::OutdoorCluster:
        return "outdoor_cluster";
    case ScenarioKind::OutdoorUniform:
        return "outdoor_uniform";
    }
    return "?";
}

ScenarioKind scenario_from_string(std::string_view s)
{
    if (s == "indoor" || s == "indoor_hotzone") return ScenarioKind::IndoorHotzone;
    if (s == "outdoor_cluster" || s == "cluster") return ScenarioKind::OutdoorCluster;
    if (s == "outdoor_uniform" || s == "uniform") return ScenarioKind::OutdoorUniform;
    throw ConfigError("unknown scenario '" + std::string(s) + "'");
}

ScenarioParams ScenarioParams::defaults(ScenarioKind kind)
{
    ScenarioParams p;
    switch (kind) {
    case ScenarioKind::IndoorHotzone:
        p.bs_height_m = 6.0;
        p.min_ue_bs_distance_m = 3.0;
        p.channel.bs_ue = indoor_hotspot_model();
        p.channel.bs_bs = indoor_hotspot_model();
        p.channel.bs_bs.los_probability = LosProbability::Always;
        p.channel.ue_ue = indoor_hotspot_model();
        p.channel.ue_ue.min_distance_m = 1.0;
        p.channel.bs_antenna_gain_dbi = 0.0;
        break;
    case ScenarioKind::OutdoorCluster:
    case ScenarioKind::OutdoorUniform:
        p.bs_height_m = 10.0;
        p.min_ue_bs_distance_m = 10.0;
        p.min_bs_distance_m = kind == ScenarioKind::OutdoorCluster ? 20.0 : 40.0;
        p.channel.bs_ue = urban_micro_model();
        p.channel.bs_bs = urban_micro_model();
        p.channel.bs_bs.los = {43.3, 20.0};
        // Clustered cells see each other; uniformly dropped ones mostly do not.
        p.channel.bs_bs.los_probability =
            kind == ScenarioKind::OutdoorCluster ? LosProbability::Always : LosProbability::UrbanMicro;
        p.channel.ue_ue = urban_micro_model();
        p.channel.ue_ue.min_distance_m = 1.0;
        p.channel.bs_antenna_gain_dbi = 5.0;
        break;
    }
    return p;
}

double sector_boresight_deg(int sector) { return 30.0 + 120.0 * sector; }

bool in_sector(Point2 site, int sector, double isd_m, Point2 p)
{
    const Point2 q = p - site;
    for (int k = 0; k < 6; ++k) {
        const double a = k * kPi / 3.0;
        if (q.x * std::cos(a) + q.y * std::sin(a) > isd_m / 2.0) return false;
    }
    const double b = sector_boresight_deg(sector) * kPi / 180.0;
    return q.x * std::cos(b) + q.y * std::sin(b) >= 0.5 * norm(q);
}

void NetworkLayout::index()
{
    dl_ues_of_cell.assign(cells.size(), {});
    ul_ues_of_cell.assign(cells.size(), {});
    dl_ues.clear();
    ul_ues.clear();
    for (std::size_t i = 0; i < cells.size(); ++i)
        FDSIM_EXPECTS(cells[i].id == i, "cell ids must equal their index");
    for (std::size_t i = 0; i < ues.size(); ++i) {
        const auto& u = ues[i];
        FDSIM_EXPECTS(u.id == i, "UE ids must equal their index");
        FDSIM_EXPECTS(u.cell < cells.size(), "UE associated with unknown cell");
        if (u.direction == Direction::Downlink) {
            dl_ues_of_cell[u.cell].push_back(u.id);
            dl_ues.push_back(u.id);
        } else {
            ul_ues_of_cell[u.cell].push_back(u.id);
            ul_ues.push_back(u.id);
        }
    }
}

void NetworkLayout::write_csv(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out.precision(10);
    out << "id,kind,x,y,z,cell,direction\n";
    for (const auto& c : cells) out << c.id << ",bs," << c.pos.x << ',' << c.pos.y << ',' << c.height_m << ',' << c.id << ",\n";
    for (const auto& u : ues)
        out << u.id << ",ue," << u.pos.x << ',' << u.pos.y << ',' << u.height_m << ',' << u.cell << ','
            << to_string(u.direction) << '\n';
}

CellId strongest_cell(const NetworkLayout& layout, const RadioNode& ue, std::uint64_t shadow_seed)
{
    FDSIM_EXPECTS(!layout.cells.empty(), "association needs at least one cell");
    CellId best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (const SmallCell& c : layout.cells) {
        const double g = link_gain_db(layout.radio_node(c), ue, layout.params.channel, layout.wrap, shadow_seed);
        if (g > best_gain) {
            best_gain = g;
            best = c.id;
        }
    }
    return best;
}

NetworkLayout generate_layout(ScenarioKind kind, std::uint64_t rng_seed, const ScenarioParams& params)
{
    if (params.bs_per_area < 1 || params.ul_ues_per_bs < 0 || params.dl_ues_per_bs < 0)
        throw ConfigError("layout: node counts must be positive");
    if (params.isd_m <= 0.0) throw ConfigError("layout: isd_m must be positive");

    NetworkLayout layout;
    layout.kind = kind;
    layout.params = params;
    layout.wrap = WrapConfig::hexagonal(params.isd_m);
    const auto sites = hex_sites(params.isd_m);
    layout.sites.assign(sites.begin(), sites.end());

    Dropper drop(params, rng_seed);
    const auto shadow_seed = stream_seed(rng_seed, StreamTag::Shadowing);

    auto far_from_cells = [&](Point2 p, double min_d, std::size_t first) {
        for (std::size_t i = first; i < layout.cells.size(); ++i)
            if (wrapped_distance(p, layout.cells[i].pos, layout.wrap) < min_d) return false;
        return true;
    };

    // Per-area drop regions for UE candidates, indexed like the areas.
    struct Area {
        Point2 centre;
        int site;
        int sector;
    };
    std::vector<Area> areas;

    for (int s = 0; s < 7; ++s) {
        for (int sec = 0; sec < 3; ++sec) {
            const Point2 site = layout.sites[static_cast<std::size_t>(s)];
            const int area_id = s * 3 + sec;
            const std::size_t first = layout.cells.size();
            Area area{sector_centre(site, sec, params.isd_m), s, sec};

            if (kind == ScenarioKind::OutdoorCluster) {
                int tries = 0;
                do {
                    area.centre = drop.in_sector(site, sec);
                    if (++tries > params.max_retries) throw ConfigError("layout: cannot place cluster centre");
                } while (euclidean(area.centre, site) < params.cluster_min_site_distance_m);
            }

            for (int k = 0; k < params.bs_per_area; ++k) {
                SmallCell c;
                c.id = static_cast<CellId>(layout.cells.size());
                c.height_m = params.bs_height_m;
                c.site = s;
                c.sector = sec;
                if (kind == ScenarioKind::IndoorHotzone) {
                    const double spacing = params.building_length_m / params.bs_per_area;
                    c.pos = {area.centre.x - params.building_length_m / 2 + spacing * (k + 0.5), area.centre.y};
                    c.building = area_id;
                } else {
                    int tries = 0;
                    for (;;) {
                        if (++tries > params.max_retries)
                            throw ConfigError("layout: min_bs_distance_m unsatisfiable within retry budget");
                        Point2 p = kind == ScenarioKind::OutdoorCluster ? drop.in_disk(area.centre, params.cluster_radius_m)
                                                                        : drop.in_sector(site, sec);
                        p = wrap_into_region(p, layout.wrap);
                        if (euclidean(p, site) < params.min_site_distance_m) continue;
                        if (!far_from_cells(p, params.min_bs_distance_m, first)) continue;
                        c.pos = p;
                        break;
                    }
                }
                layout.cells.push_back(c);
            }
            areas.push_back(area);
        }
    }

    for (const SmallCell& target : layout.cells) {
        const Area& area = areas[static_cast<std::size_t>(target.site * 3 + target.sector)];
        for (Direction dir : {Direction::Downlink, Direction::Uplink}) {
            const int quota = dir == Direction::Downlink ? params.dl_ues_per_bs : params.ul_ues_per_bs;
            for (int k = 0; k < quota; ++k) {
                UserEquipment u;
                u.id = static_cast<NodeId>(layout.ues.size());
                u.height_m = params.ue_height_m;
                u.direction = dir;
                u.cell = target.id;
                u.building = target.building;
                int tries = 0;
                for (;;) {
                    if (++tries > params.max_retries)
                        throw ConfigError("layout: cannot associate enough UEs with cell " + std::to_string(target.id) +
                                          " within retry budget");
                    Point2 p;
                    switch (kind) {
                    case ScenarioKind::IndoorHotzone:
                        p = drop.in_rect(area.centre, params.building_length_m, params.building_width_m);
                        break;
                    case ScenarioKind::OutdoorCluster:
                        p = wrap_into_region(drop.in_disk(area.centre, params.ue_drop_radius_m), layout.wrap);
                        break;
                    case ScenarioKind::OutdoorUniform:
                        p = drop.in_sector(layout.sites[static_cast<std::size_t>(target.site)], target.sector);
                        break;
                    }
                    if (!far_from_cells(p, params.min_ue_bs_distance_m, 0)) continue;
                    u.pos = p;
                    if (strongest_cell(layout, layout.radio_node(u), shadow_seed) != target.id) continue;
                    break;
                }
                layout.ues.push_back(u);
            }
        }
    }

    layout.index();
    return layout;
}

}  // namespace fdsim
