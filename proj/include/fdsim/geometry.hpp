// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <array>
#include <cmath>

namespace fdsim {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double euclidean(Point2 a, Point2 b) { return norm(a - b); }

/// Tier-1 wrap-around for a 7-site hexagonal cluster with sites at the origin
/// and at isd * (cos 60k, sin 60k). The cluster repeats on the lattice spanned
/// by b1 = 2*a1 + a2 and b2 = 3*a2 - a1 (a1, a2 the site lattice basis), so the
/// six images of the cluster sit at +-b1, +-b2, +-(b2 - b1).
struct WrapConfig {
    double isd_m = 500.0;
    bool enabled = true;

    static WrapConfig hexagonal(double isd_m) { return WrapConfig{isd_m, true}; }
    static WrapConfig none() { return WrapConfig{0.0, false}; }

    Point2 b1() const { return {2.5 * isd_m, std::sqrt(3.0) / 2.0 * isd_m}; }
    Point2 b2() const { return {0.5 * isd_m, 1.5 * std::sqrt(3.0) * isd_m}; }

    /// Offsets of the 7 mirror images (identity first).
    std::array<Point2, 7> offsets() const
    {
        if (!enabled) return {};
        const Point2 u = b1();
        const Point2 v = b2();
        const Point2 w = v - u;
        return {Point2{}, u, -1.0 * u, v, -1.0 * v, w, -1.0 * w};
    }
};

/// Minimum over the 7 mirror images of b of the Euclidean distance to a.
double wrapped_distance(Point2 a, Point2 b, const WrapConfig& wrap);

/// Displacement from a to the closest image of b.
Point2 wrapped_delta(Point2 a, Point2 b, const WrapConfig& wrap);

/// Site centres of the 7-site cluster.
std::array<Point2, 7> hex_sites(double isd_m);

/// Maps a point to the image that lies inside the 7-site cluster region.
Point2 wrap_into_region(Point2 p, const WrapConfig& wrap);

}  // namespace fdsim
