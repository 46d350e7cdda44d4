// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "fdsim/common.hpp"

namespace fdsim {

void invariant_failed(const char* expr, const char* file, int line, const std::string& msg)
{
    throw InvariantViolation(std::string("invariant violated: ") + expr + " at " + file + ":" +
                             std::to_string(line) + (msg.empty() ? "" : " (" + msg + ")"));
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    for (double v : sorted_) FDSIM_EXPECTS(std::isfinite(v), "CDF sample must be finite");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::probability_at(std::size_t i) const
{
    return static_cast<double>(i + 1) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const
{
    FDSIM_EXPECTS(!sorted_.empty(), "quantile of empty sample");
    p = std::clamp(p, 0.0, 1.0);
    const double pos = p * static_cast<double>(sorted_.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted_.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted_[lo] + frac * (sorted_[hi] - sorted_[lo]);
}

double EmpiricalCdf::mean() const { return mean_of(sorted_); }

void EmpiricalCdf::write_csv(const std::string& path, const std::string& value_header) const
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out.precision(10);
    out << value_header << ",cum_prob\n";
    for (std::size_t i = 0; i < sorted_.size(); ++i) out << sorted_[i] << ',' << probability_at(i) << '\n';
}

double percentile(std::span<const double> sample, double pct)
{
    return EmpiricalCdf(std::vector<double>(sample.begin(), sample.end())).quantile(pct / 100.0);
}

double mean_of(std::span<const double> sample)
{
    if (sample.empty()) return 0.0;
    return std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
}

double jain_index(std::span<const double> sample)
{
    if (sample.empty()) return 1.0;
    double sum = 0.0, sq = 0.0;
    for (double v : sample) {
        sum += v;
        sq += v * v;
    }
    if (sq == 0.0) return 1.0;
    return sum * sum / (static_cast<double>(sample.size()) * sq);
}

}  // namespace fdsim
