// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "fdsim/stats.hpp"

namespace fdsim {

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name)
{
    std::filesystem::create_directories(dir);
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << std::setprecision(10);
    return out;
}

std::string fmt(double v, int prec = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string gain_text(const std::optional<double>& g)
{
    return g ? fmt(*g, 4) : std::string("undefined");
}

void cdf_rows(std::ostream& out, const std::string& prefix, const std::vector<double>& sample)
{
    if (sample.empty()) return;
    const EmpiricalCdf cdf(sample);
    for (std::size_t i = 0; i < cdf.values().size(); ++i)
        out << prefix << cdf.values()[i] << ',' << cdf.probability_at(i) << '\n';
}

void write_cdfs(const std::string& dir, const std::vector<const RunReport*>& reports, bool with_load)
{
    const std::string head = with_load ? "dl_load_bps," : "";
    auto tput_dl = open_out(dir, "throughput_cdf_dl.csv");
    auto tput_ul = open_out(dir, "throughput_cdf_ul.csv");
    auto perc_dl = open_out(dir, "perceived_tput_dl.csv");
    auto perc_ul = open_out(dir, "perceived_tput_ul.csv");
    tput_dl << head << "mode,throughput_bps,cum_prob\n";
    tput_ul << head << "mode,throughput_bps,cum_prob\n";
    perc_dl << head << "mode,perceived_bps,cum_prob\n";
    perc_ul << head << "mode,perceived_bps,cum_prob\n";
    for (const RunReport* r : reports) {
        for (const auto& m : r->modes) {
            std::string prefix = std::string(to_string(m.mode)) + ",";
            if (with_load) prefix = fmt(r->dl_load_bps, 0) + "," + prefix;
            cdf_rows(tput_dl, prefix, m.dl_tput_bps);
            cdf_rows(tput_ul, prefix, m.ul_tput_bps);
            cdf_rows(perc_dl, prefix, m.dl_perceived_bps);
            cdf_rows(perc_ul, prefix, m.ul_perceived_bps);
        }
    }
}

void write_gain_rows(std::ostream& out, const RunReport& r, bool with_load)
{
    for (const auto& g : r.gains) {
        if (with_load) out << fmt(r.dl_load_bps, 0) << ',';
        out << to_string(g.mode) << ',' << to_string(g.direction) << ',' << g.metric << ',' << gain_text(g.gain) << '\n';
    }
}

void summary_body(std::ostream& os, const RunReport& r)
{
    os << "traffic: " << to_string(r.traffic);
    if (r.traffic == TrafficKind::Ftp3) os << " (dl " << fmt(r.dl_load_bps / 1e6, 2) << " Mbps, ul " << fmt(r.ul_load_bps / 1e6, 2) << " Mbps)";
    os << '\n';
    for (const auto& m : r.modes) {
        os << "mode " << to_string(m.mode) << " (scheduler " << to_string(m.scheduler) << ")\n";
        if (!m.dl_tput_bps.empty())
            os << "  mean throughput dl " << fmt(mean_of(m.dl_tput_bps) / 1e6) << " Mbps, ul " << fmt(mean_of(m.ul_tput_bps) / 1e6)
               << " Mbps\n";
        if (r.traffic == TrafficKind::Ftp3) {
            os << "  bursts completed " << m.bursts_completed << ", unfinished " << m.bursts_unfinished << '\n';
            if (!m.dl_perceived_bps.empty())
                os << "  mean perceived dl " << fmt(mean_of(m.dl_perceived_bps) / 1e6) << " Mbps\n";
            if (!m.ul_perceived_bps.empty())
                os << "  mean perceived ul " << fmt(mean_of(m.ul_perceived_bps) / 1e6) << " Mbps\n";
        }
        os << "  boost dB per drop:";
        for (double b : m.boost_db) os << ' ' << fmt(b, 1);
        for (const auto& b : m.boost_selection)
            os << "\n  boost selection: median long-term UL SINR " << fmt(b.median_ul_sinr_db, 2) << " dB, median DL rise "
               << fmt(b.median_dl_rise_db, 2) << " dB" << (b.capped ? " (capped)" : "");
        os << "\n  mean SINR dB per drop (dl/ul):";
        for (std::size_t i = 0; i < m.mean_dl_sinr_db.size(); ++i)
            os << ' ' << fmt(m.mean_dl_sinr_db[i], 2) << '/' << fmt(m.mean_ul_sinr_db[i], 2);
        os << "\n  harq acks " << m.acks << ", nacks " << m.nacks << ", failures " << m.harq_failures << '\n';
    }
    print_gains(os, r);
    os << "pair feedback overhead: " << fmt(100.0 * r.pair_feedback_overhead, 2) << "% of sub-band CQI bits\n";
    for (const auto& w : r.warnings) os << "warning: " << w << '\n';
}

}  // namespace

void print_gains(std::ostream& os, const RunReport& r)
{
    os << "gains vs fdd (" << (r.traffic == TrafficKind::Ftp3 ? "perceived throughput" : "throughput") << ")\n";
    os << "  mode      dir  mean      p5        p50       p95\n";
    for (const auto& m : r.modes) {
        if (m.mode == DuplexMode::Fdd) continue;
        for (Direction d : {Direction::Downlink, Direction::Uplink}) {
            char line[160];
            std::snprintf(line, sizeof line, "  %-9s %-4s %-9s %-9s %-9s %-9s\n", std::string(to_string(m.mode)).c_str(),
                          d == Direction::Downlink ? "dl" : "ul", gain_text(r.gain(m.mode, d, "mean")).c_str(),
                          gain_text(r.gain(m.mode, d, "p5")).c_str(), gain_text(r.gain(m.mode, d, "p50")).c_str(),
                          gain_text(r.gain(m.mode, d, "p95")).c_str());
            os << line;
        }
    }
}

void write_report(const std::string& dir, const RunReport& report)
{
    write_cdfs(dir, {&report}, false);
    auto gains = open_out(dir, "gains.csv");
    gains << "mode,direction,metric,gain\n";
    write_gain_rows(gains, report, false);
    auto summary = open_out(dir, "summary.txt");
    summary_body(summary, report);
    summary << "config:\n" << report.config_json << '\n';
}

void write_sweep(const std::string& dir, const SweepReport& sweep, const std::string& config_json)
{
    std::vector<const RunReport*> ptrs;
    for (const auto& p : sweep.points) ptrs.push_back(&p);
    write_cdfs(dir, ptrs, true);
    auto gains = open_out(dir, "gains.csv");
    gains << "dl_load_bps,mode,direction,metric,gain\n";
    for (const auto& p : sweep.points) write_gain_rows(gains, p, true);
    auto summary = open_out(dir, "summary.txt");
    for (const auto& p : sweep.points) {
        summary_body(summary, p);
        summary << '\n';
    }
    summary << "config:\n" << config_json << '\n';
}

void write_fig1(const std::string& dir, const Fig1Report& fig)
{
    auto out = open_out(dir, "fig1_cdf.csv");
    out << "metric,ratio_db,cum_prob\n";
    cdf_rows(out, "bsbs_over_ul,", fig.ratios.bsbs_over_ul.values());
    cdf_rows(out, "ueue_over_dl,", fig.ratios.ueue_over_dl.values());
    auto summary = open_out(dir, "summary.txt");
    summary << "interference ratio medians (dB): bsbs_over_ul " << fmt(fig.ratios.bsbs_over_ul.median(), 2)
            << ", ueue_over_dl " << fmt(fig.ratios.ueue_over_dl.median(), 2) << '\n';
    summary << "nodes without interferers: " << fig.ratios.skipped << '\n';
    for (const auto& w : fig.warnings) summary << "warning: " << w << '\n';
}

}  // namespace fdsim
