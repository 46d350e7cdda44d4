// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace fdsim {

/// SplitMix64 finalizer. Used to derive independent sub-stream seeds and
/// for keyed (counter-based) draws.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hierarchical seed derivation: the same (master, tags...) always yields the
/// same seed, and changing any tag gives an unrelated stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags)
{
    std::uint64_t h = mix64(master);
    for (auto t : tags) h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL));
    return h;
}

/// Stream tags for the RNG hierarchy rooted at a drop seed.
enum class StreamTag : std::uint64_t {
    Layout = 1,
    Shadowing = 2,
    LosState = 3,
    Traffic = 4,
    Harq = 5,
};

inline std::uint64_t stream_seed(std::uint64_t drop_seed, StreamTag tag, std::uint64_t sub = 0)
{
    return derive_seed(drop_seed, {static_cast<std::uint64_t>(tag), sub});
}

/// Small-state URBG for keyed draws where seeding an mt19937 per key would
/// dominate the cost (one generator per link).
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

/// Uniform in [0, 1) from 53 random bits; independent of the standard
/// library's distribution implementations.
template <class Urbg>
double uniform01(Urbg& g)
{
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Box-Muller; one normal per call (the second variate is discarded so the
/// draw count per call is fixed).
template <class Urbg>
double standard_normal(Urbg& g)
{
    const double u1 = 1.0 - uniform01(g);  // (0, 1]
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

template <class Urbg>
double exponential(Urbg& g, double rate)
{
    return -std::log1p(-uniform01(g)) / rate;
}

template <class Urbg>
bool bernoulli(Urbg& g, double p)
{
    return uniform01(g) < p;
}

using Stream = std::mt19937_64;

}  // namespace fdsim
