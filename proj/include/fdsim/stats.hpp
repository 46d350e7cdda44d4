// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <span>
#include <string>
#include <vector>

namespace fdsim {

/// Empirical CDF over a finite sample. Points are (value, i/n) for the sorted
/// sample, so the last probability is exactly 1.
class EmpiricalCdf {
  public:
    EmpiricalCdf() = default;
    explicit EmpiricalCdf(std::vector<double> samples);

    bool empty() const { return sorted_.empty(); }
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& values() const { return sorted_; }
    double probability_at(std::size_t i) const;

    /// Linear interpolation between order statistics, p in [0, 1].
    double quantile(double p) const;
    double median() const { return quantile(0.5); }
    double mean() const;

    void write_csv(const std::string& path, const std::string& value_header) const;

  private:
    std::vector<double> sorted_;
};

/// Percentile (0..100) of an unsorted sample, same interpolation rule as
/// EmpiricalCdf::quantile.
double percentile(std::span<const double> sample, double pct);

double mean_of(std::span<const double> sample);

/// Jain's fairness index, 1 for perfectly equal allocations.
double jain_index(std::span<const double> sample);

}  // namespace fdsim
