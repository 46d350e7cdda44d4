// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/geometry.hpp"

#include <limits>

namespace fdsim {

Point2 wrapped_delta(Point2 a, Point2 b, const WrapConfig& wrap)
{
    Point2 best = b - a;
    if (!wrap.enabled) return best;
    double best_d2 = best.x * best.x + best.y * best.y;
    for (const Point2& o : wrap.offsets()) {
        const Point2 d = (b + o) - a;
        const double d2 = d.x * d.x + d.y * d.y;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = d;
        }
    }
    return best;
}

double wrapped_distance(Point2 a, Point2 b, const WrapConfig& wrap) { return norm(wrapped_delta(a, b, wrap)); }

std::array<Point2, 7> hex_sites(double isd_m)
{
    std::array<Point2, 7> sites{};
    constexpr double kPi = 3.14159265358979323846;
    for (int k = 0; k < 6; ++k) {
        const double a = k * kPi / 3.0;
        sites[static_cast<std::size_t>(k) + 1] = {isd_m * std::cos(a), isd_m * std::sin(a)};
    }
    return sites;
}

Point2 wrap_into_region(Point2 p, const WrapConfig& wrap)
{
    if (!wrap.enabled) return p;
    const auto sites = hex_sites(wrap.isd_m);
    auto nearest_site = [&](Point2 q) {
        double best = std::numeric_limits<double>::max();
        for (const Point2& s : sites) best = std::min(best, euclidean(q, s));
        return best;
    };
    Point2 best = p;
    double best_d = nearest_site(p);
    for (const Point2& o : wrap.offsets()) {
        const Point2 q = p + o;
        const double d = nearest_site(q);
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

}  // namespace fdsim
