// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <ostream>
#include <string>

#include "fdsim/engine.hpp"

namespace fdsim {

/// summary.txt, throughput_cdf_{dl,ul}.csv, perceived_tput_{dl,ul}.csv and
/// gains.csv under dir (created if missing).
void write_report(const std::string& dir, const RunReport& report);

/// Same files for a sweep; every row carries its DL offered load.
void write_sweep(const std::string& dir, const SweepReport& sweep, const std::string& config_json);

/// fig1_cdf.csv: metric,ratio_db,cum_prob.
void write_fig1(const std::string& dir, const Fig1Report& fig);

/// Human-readable gain table.
void print_gains(std::ostream& os, const RunReport& report);

}  // namespace fdsim
