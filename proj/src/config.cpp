// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/config.hpp"

#include <fstream>
#include <sstream>

namespace fdsim {

using nlohmann::json;

namespace {

std::string pair_mode_name(PairFeedbackKind k)
{
    return k == PairFeedbackKind::OneBit ? "onebit" : "multibit";
}

PairFeedbackKind pair_mode_from(const std::string& s)
{
    if (s == "onebit") return PairFeedbackKind::OneBit;
    if (s == "multibit") return PairFeedbackKind::MultiBit;
    throw ConfigError("feedback.pair_mode: unknown value '" + s + "' (expected onebit or multibit)");
}

/// Overlays src onto dst; every key of src must already exist in dst with a
/// compatible type.
void merge_strict(json& dst, const json& src, const std::string& path)
{
    if (!src.is_object()) throw ConfigError((path.empty() ? std::string("config") : path) + ": expected an object");
    for (auto it = src.begin(); it != src.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (!dst.contains(it.key())) throw ConfigError("unknown config key '" + key + "'");
        json& d = dst[it.key()];
        const json& v = it.value();
        if (d.is_object()) {
            merge_strict(d, v, key);
            continue;
        }
        const bool ok = (d.is_number() && v.is_number()) || (d.is_boolean() && v.is_boolean()) ||
                        (d.is_string() && v.is_string()) || (d.is_array() && v.is_array());
        if (!ok) throw ConfigError("config key '" + key + "': expected " + std::string(d.type_name()) + ", got " + v.type_name());
        d = v;
    }
}

/// Typed access with the key path in the error.
class Reader {
  public:
    explicit Reader(const json& j, std::string path = {}) : j_(j), path_(std::move(path)) {}

    Reader at(const std::string& k) const { return Reader(j_.at(k), name(k)); }

    template <class T>
    T get(const std::string& k) const
    {
        try {
            return j_.at(k).get<T>();
        } catch (const json::exception&) {
            throw ConfigError("config key '" + name(k) + "' has the wrong type");
        }
    }

    int get_int(const std::string& k) const
    {
        const json& v = j_.at(k);
        if (!v.is_number_integer() && !(v.is_number() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>()))))
            throw ConfigError("config key '" + name(k) + "' must be an integer");
        return static_cast<int>(v.get<double>());
    }

  private:
    std::string name(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
    const json& j_;
    std::string path_;
};

}  // namespace

json default_config_json(ScenarioKind scenario)
{
    RunConfig cfg;
    cfg.scenario = scenario;
    cfg.layout = ScenarioParams::defaults(scenario);
    return to_json(cfg);
}

json to_json(const RunConfig& cfg)
{
    json j;
    j["scenario"] = std::string(to_string(cfg.scenario));
    json modes = json::array();
    for (auto m : cfg.modes) modes.push_back(std::string(to_string(m)));
    j["modes"] = modes;
    j["scheduler"] = std::string(to_string(cfg.fd_scheduler));
    j["seed"] = cfg.seed;
    j["drops"] = cfg.drops;
    j["ttis"] = cfg.ttis;
    j["workers"] = cfg.workers;
    j["cross_links"] = cfg.cross_links;
    j["layout"] = {{"isd_m", cfg.layout.isd_m},
                   {"bs_per_area", cfg.layout.bs_per_area},
                   {"dl_ues_per_bs", cfg.layout.dl_ues_per_bs},
                   {"ul_ues_per_bs", cfg.layout.ul_ues_per_bs},
                   {"max_retries", cfg.layout.max_retries}};
    j["nulling"] = {{"tx_db", cfg.nulling.tx_null_db}, {"rx_db", cfg.nulling.rx_null_db}};
    j["sic_db"] = cfg.sic.sic_db;
    j["power"] = {{"p_max_dbm", cfg.power.p_max_dbm},
                  {"p0_dbm", cfg.power.p0_dbm},
                  {"alpha", cfg.power.alpha},
                  {"boost_db", cfg.power.boost_db},
                  {"bs_power_dbm", cfg.power.bs_power_dbm},
                  {"reference_rbs", cfg.power.reference_rbs}};
    j["boost"] = {{"auto", cfg.boost.automatic},
                  {"target_ul_sinr_db", cfg.boost.criteria.target_ul_sinr_db},
                  {"max_dl_degradation_db", cfg.boost.criteria.max_dl_degradation_db},
                  {"step_db", cfg.boost.criteria.step_db},
                  {"max_boost_db", cfg.boost.criteria.max_boost_db}};
    j["noise"] = {{"ue_noise_figure_db", cfg.noise.ue_noise_figure_db}, {"bs_noise_figure_db", cfg.noise.bs_noise_figure_db}};
    j["feedback"] = {{"delay_tti", cfg.feedback.delay_tti},
                     {"pair_update_period_tti", cfg.feedback.pair_update_period_tti},
                     {"default_cqi", cfg.feedback.default_cqi},
                     {"pair_mode", pair_mode_name(cfg.feedback.pair_mode.kind)},
                     {"pair_bits", cfg.feedback.pair_mode.bits},
                     {"threshold_steps", cfg.feedback.pair_mode.threshold_steps}};
    j["pf"] = {{"time_constant_tti", cfg.pf.time_constant_tti}, {"floor_bps", cfg.pf.floor_bps}};
    j["harq"] = {{"rtt_tti", cfg.harq.rtt_tti},
                 {"max_transmissions", cfg.harq.max_transmissions},
                 {"combining_gain_db", cfg.harq.combining_gain_db}};
    j["link"] = {{"bler_slope", cfg.link.bler_slope}, {"tb_overhead", cfg.link.tb_overhead}};
    j["grid"] = {{"total_rb", cfg.grid.total_rb}, {"rb_per_subband", cfg.grid.rb_per_subband}};
    j["traffic"] = {{"model", std::string(to_string(cfg.traffic.kind))},
                    {"file_size_bits", cfg.traffic.ftp.file_size_bits},
                    {"dl_load_bps", cfg.traffic.ftp.dl_offered_load_bps},
                    {"ul_load_bps", cfg.traffic.ftp.ul_offered_load_bps},
                    {"dl_ul_ratio", cfg.traffic.dl_ul_ratio},
                    {"sweep_dl_loads_bps", cfg.traffic.sweep_dl_loads_bps}};
    return j;
}

RunConfig from_json(const json& user)
{
    if (!user.is_object()) throw ConfigError("config: top level must be an object");
    ScenarioKind scenario = ScenarioKind::IndoorHotzone;
    if (user.contains("scenario")) {
        if (!user["scenario"].is_string()) throw ConfigError("config key 'scenario' must be a string");
        scenario = scenario_from_string(user["scenario"].get<std::string>());
    }
    json j = default_config_json(scenario);
    merge_strict(j, user, "");

    const Reader r(j);
    RunConfig cfg;
    cfg.scenario = scenario;
    cfg.layout = ScenarioParams::defaults(scenario);
    cfg.modes.clear();
    for (const auto& m : j.at("modes")) {
        if (!m.is_string()) throw ConfigError("config key 'modes' must list strings");
        cfg.modes.push_back(duplex_from_string(m.get<std::string>()));
    }
    cfg.fd_scheduler = scheduler_from_string(r.get<std::string>("scheduler"));
    {
        const json& s = j.at("seed");
        if (!s.is_number_integer() || s.get<long long>() < 0) throw ConfigError("config key 'seed' must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.drops = r.get_int("drops");
    cfg.ttis = r.get_int("ttis");
    cfg.workers = r.get_int("workers");
    cfg.cross_links = r.get<bool>("cross_links");

    const Reader lay = r.at("layout");
    cfg.layout.isd_m = lay.get<double>("isd_m");
    cfg.layout.bs_per_area = lay.get_int("bs_per_area");
    cfg.layout.dl_ues_per_bs = lay.get_int("dl_ues_per_bs");
    cfg.layout.ul_ues_per_bs = lay.get_int("ul_ues_per_bs");
    cfg.layout.max_retries = lay.get_int("max_retries");

    const Reader nul = r.at("nulling");
    cfg.nulling.tx_null_db = nul.get<double>("tx_db");
    cfg.nulling.rx_null_db = nul.get<double>("rx_db");
    cfg.sic.sic_db = r.get<double>("sic_db");

    const Reader pw = r.at("power");
    cfg.power.p_max_dbm = pw.get<double>("p_max_dbm");
    cfg.power.p0_dbm = pw.get<double>("p0_dbm");
    cfg.power.alpha = pw.get<double>("alpha");
    cfg.power.boost_db = pw.get<double>("boost_db");
    cfg.power.bs_power_dbm = pw.get<double>("bs_power_dbm");
    cfg.power.reference_rbs = pw.get_int("reference_rbs");

    const Reader bo = r.at("boost");
    cfg.boost.automatic = bo.get<bool>("auto");
    cfg.boost.criteria.target_ul_sinr_db = bo.get<double>("target_ul_sinr_db");
    cfg.boost.criteria.max_dl_degradation_db = bo.get<double>("max_dl_degradation_db");
    cfg.boost.criteria.step_db = bo.get<double>("step_db");
    cfg.boost.criteria.max_boost_db = bo.get<double>("max_boost_db");

    const Reader no = r.at("noise");
    cfg.noise.ue_noise_figure_db = no.get<double>("ue_noise_figure_db");
    cfg.noise.bs_noise_figure_db = no.get<double>("bs_noise_figure_db");

    const Reader fb = r.at("feedback");
    cfg.feedback.delay_tti = fb.get_int("delay_tti");
    cfg.feedback.pair_update_period_tti = fb.get_int("pair_update_period_tti");
    cfg.feedback.default_cqi = fb.get_int("default_cqi");
    cfg.feedback.pair_mode.kind = pair_mode_from(fb.get<std::string>("pair_mode"));
    cfg.feedback.pair_mode.bits = fb.get_int("pair_bits");
    cfg.feedback.pair_mode.threshold_steps = fb.get_int("threshold_steps");

    const Reader pf = r.at("pf");
    cfg.pf.time_constant_tti = pf.get_int("time_constant_tti");
    cfg.pf.floor_bps = pf.get<double>("floor_bps");

    const Reader hq = r.at("harq");
    cfg.harq.rtt_tti = hq.get_int("rtt_tti");
    cfg.harq.max_transmissions = hq.get_int("max_transmissions");
    cfg.harq.combining_gain_db = hq.get<double>("combining_gain_db");

    const Reader ln = r.at("link");
    cfg.link.bler_slope = ln.get<double>("bler_slope");
    cfg.link.tb_overhead = ln.get<double>("tb_overhead");

    const Reader gr = r.at("grid");
    cfg.grid.total_rb = gr.get_int("total_rb");
    cfg.grid.rb_per_subband = gr.get_int("rb_per_subband");

    const Reader tr = r.at("traffic");
    cfg.traffic.kind = traffic_from_string(tr.get<std::string>("model"));
    cfg.traffic.ftp.file_size_bits = tr.get<double>("file_size_bits");
    cfg.traffic.ftp.dl_offered_load_bps = tr.get<double>("dl_load_bps");
    cfg.traffic.ftp.ul_offered_load_bps = tr.get<double>("ul_load_bps");
    cfg.traffic.dl_ul_ratio = tr.get<double>("dl_ul_ratio");
    cfg.traffic.sweep_dl_loads_bps = tr.get<std::vector<double>>("sweep_dl_loads_bps");

    if (cfg.layout.bs_per_area < 1 || cfg.layout.dl_ues_per_bs < 0 || cfg.layout.ul_ues_per_bs < 0)
        throw ConfigError("layout: bs_per_area >= 1 and non-negative UE counts required");
    if (!(cfg.layout.isd_m > 0.0)) throw ConfigError("layout.isd_m must be positive");
    cfg.validate();
    return cfg;
}

std::pair<std::string, json> parse_override(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not of the form key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    return {key, value};
}

void apply_override(json& j, const std::string& dotted_key, const json& value)
{
    json* node = &j;
    std::stringstream ss(dotted_key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) throw ConfigError("override key '" + dotted_key + "' has an empty component");
        parts.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        json& next = (*node)[parts[i]];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) throw ConfigError("override key '" + dotted_key + "': '" + parts[i] + "' is not a section");
        node = &next;
    }
    (*node)[parts.back()] = value;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides)
{
    json j = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        j = json::parse(in, nullptr, false, true);
        if (j.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
    }
    for (const auto& o : overrides) {
        auto [k, v] = parse_override(o);
        apply_override(j, k, v);
    }
    return from_json(j);
}

}  // namespace fdsim
