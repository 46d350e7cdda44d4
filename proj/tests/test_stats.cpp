// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include <doctest.h>

#include <random>

#include "fdsim/stats.hpp"
#include "oracles.hpp"

using namespace fdsim;

TEST_CASE("percentiles equal a sorted-array oracle")
{
    std::mt19937_64 rng(5);
    std::lognormal_distribution<double> val(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + rng() % 300);
        for (auto& x : v) x = val(rng);
        for (double p : {0.0, 5.0, 10.0, 33.3, 50.0, 90.0, 95.0, 100.0})
            CHECK(percentile(v, p) == doctest::Approx(oracle::sorted_percentile(v, p)).epsilon(1e-12));
    }
    const std::vector<double> one = {3.0};
    CHECK(percentile(one, 5.0) == 3.0);
}

TEST_CASE("empirical CDF")
{
    const EmpiricalCdf cdf({4.0, 1.0, 3.0, 2.0});
    CHECK(cdf.values() == std::vector<double>{1.0, 2.0, 3.0, 4.0});
    CHECK(cdf.median() == doctest::Approx(2.5));
    CHECK(cdf.mean() == doctest::Approx(2.5));
    CHECK(cdf.quantile(0.0) == 1.0);
    CHECK(cdf.quantile(1.0) == 4.0);
    CHECK(cdf.probability_at(3) == doctest::Approx(1.0));
}

TEST_CASE("Jain index")
{
    const std::vector<double> fair = {2.0, 2.0, 2.0};
    const std::vector<double> hog = {1.0, 0.0, 0.0, 0.0};
    CHECK(jain_index(fair) == doctest::Approx(1.0));
    CHECK(jain_index(hog) == doctest::Approx(0.25));
    CHECK(mean_of(fair) == 2.0);
}
