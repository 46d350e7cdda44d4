// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fdsim {

/// Malformed or unsatisfiable configuration. Mapped to CLI exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Broken internal contract (programming error or corrupted state). Mapped
/// to CLI exit code 2.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

[[noreturn]] void invariant_failed(const char* expr, const char* file, int line, const std::string& msg);

#define FDSIM_EXPECTS(cond, msg)                                                    \
    do {                                                                            \
        if (!(cond)) ::fdsim::invariant_failed(#cond, __FILE__, __LINE__, (msg));   \
    } while (0)

using NodeId = std::uint32_t;
using CellId = std::uint32_t;
using Tti = std::int64_t;

enum class Direction : std::uint8_t { Downlink, Uplink };

inline const char* to_string(Direction d) { return d == Direction::Downlink ? "DL" : "UL"; }

inline constexpr double kThermalNoiseDbmPerHz = -174.0;
inline constexpr double kRbBandwidthHz = 180e3;
inline constexpr double kTtiSeconds = 1e-3;
// Stands in for "no signal" wherever a dB value must stay finite.
inline constexpr double kFloorDbm = -200.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin)
{
    if (lin <= 0.0) return kFloorDbm;
    return 10.0 * std::log10(lin);
}

}  // namespace fdsim
