// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

// fdsim command-line front end.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdsim/config.hpp"
#include "fdsim/engine.hpp"
#include "fdsim/report.hpp"

namespace {

struct Options {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::vector<std::string> sets;
    std::string scenario;
    std::string modes;
    std::string traffic;
    std::string scheduler;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--config", o.config, "JSON scenario config");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--set", o.sets, "override a config key, key=value (repeatable)")->take_all();
    cmd->add_option("--workers", o.workers, "worker threads (0: all cores)");
    cmd->add_option("--scenario", o.scenario, "indoor, outdoor_cluster or outdoor_uniform");
    cmd->add_option("--modes", o.modes, "comma-separated duplex modes, e.g. fd,fdd,flexible");
    cmd->add_option("--traffic", o.traffic, "full_buffer or ftp3");
    cmd->add_option("--scheduler", o.scheduler, "FD scheduler: basic or joint");
}

fdsim::RunConfig resolve(const Options& o)
{
    // Shorthand flags come first so an explicit --set wins.
    std::vector<std::string> sets;
    if (!o.scenario.empty()) sets.push_back("scenario=" + o.scenario);
    if (!o.traffic.empty()) sets.push_back("traffic.model=" + o.traffic);
    if (!o.scheduler.empty()) sets.push_back("scheduler=" + o.scheduler);
    if (o.seed) sets.push_back("seed=" + std::to_string(*o.seed));
    if (o.workers) sets.push_back("workers=" + std::to_string(*o.workers));
    if (!o.modes.empty()) {
        std::string arr = "modes=[";
        std::string cur;
        bool first = true;
        for (char ch : o.modes + ",") {
            if (ch != ',') {
                cur += ch;
                continue;
            }
            if (cur.empty()) continue;
            arr += (first ? "\"" : ",\"") + cur + "\"";
            first = false;
            cur.clear();
        }
        sets.push_back(arr + "]");
    }
    sets.insert(sets.end(), o.sets.begin(), o.sets.end());
    return fdsim::load_config(o.config, sets);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"fdsim: full-duplex small-cell system-level simulator"};
    app.require_subcommand(1);

    Options o;
    auto* run = app.add_subcommand("run", "run the configured modes and write reports");
    auto* compare = app.add_subcommand("compare", "compare duplex modes against fdd");
    auto* sweep = app.add_subcommand("sweep", "bursty-traffic load sweep");
    auto* f1 = app.add_subcommand("fig1", "BS-BS and UE-UE interference ratio CDFs");
    auto* validate = app.add_subcommand("validate", "check a config and exit");
    for (auto* c : {run, compare, sweep, f1, validate}) add_common(c, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        fdsim::RunConfig cfg = resolve(o);
        const std::string echo = fdsim::to_json(cfg).dump(2);
        const auto t0 = std::chrono::steady_clock::now();

        if (validate->parsed()) {
            std::cout << "config ok: " << fdsim::to_string(cfg.scenario) << ", " << cfg.drops << " drops x " << cfg.ttis
                      << " TTIs\n";
            return 0;
        }
        if (f1->parsed()) {
            const auto fig = fdsim::fig1(cfg);
            fdsim::write_fig1(o.out, fig);
            std::cout << "median BS-BS / UL interference: " << fig.ratios.bsbs_over_ul.median() << " dB\n"
                      << "median UE-UE / DL interference: " << fig.ratios.ueue_over_dl.median() << " dB\n";
        } else if (sweep->parsed()) {
            const auto s = fdsim::load_sweep(cfg);
            fdsim::write_sweep(o.out, s, echo);
            for (const auto& p : s.points) {
                std::cout << "dl load " << p.dl_load_bps / 1e6 << " Mbps\n";
                fdsim::print_gains(std::cout, p);
            }
        } else {
            if (compare->parsed() && cfg.modes.size() < 2)
                throw fdsim::ConfigError("compare: at least two modes required (one of them fdd)");
            auto report = fdsim::compare_modes(cfg);
            report.config_json = echo;
            fdsim::write_report(o.out, report);
            fdsim::print_gains(std::cout, report);
            for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "wrote " << o.out << " in " << secs << " s\n";
        return 0;
    } catch (const fdsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const fdsim::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
