// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <optional>
#include <vector>

#include "fdsim/common.hpp"

namespace fdsim {

/// What one cell does on one subband in one TTI.
struct SubbandAssignment {
    std::optional<NodeId> dl_ue;
    std::optional<NodeId> ul_ue;
    int dl_mcs = 0;
    int ul_mcs = 0;
    double dl_power_dbm_per_rb = kFloorDbm;
    double ul_power_dbm_per_rb = kFloorDbm;
    bool dl_retx = false;
    bool ul_retx = false;

    friend bool operator==(const SubbandAssignment&, const SubbandAssignment&) = default;
};

struct ScheduleDecision {
    CellId cell = 0;
    std::vector<SubbandAssignment> subbands;

    friend bool operator==(const ScheduleDecision&, const ScheduleDecision&) = default;
};

}  // namespace fdsim
