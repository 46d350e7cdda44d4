// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

// Reference implementations for cross-checking the library. They favour the
// most literal formulation (enumerate everything, sort, scan) over speed and
// share no code with the code under test beyond the public data types.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "fdsim/csi.hpp"
#include "fdsim/decision.hpp"
#include "fdsim/link.hpp"
#include "fdsim/radio.hpp"
#include "fdsim/scheduling.hpp"

namespace fdsim::oracle {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

inline double rate(const CellSchedulingInput& in, int cqi, int s)
{
    const double eff = in.cqi_table->entries[static_cast<std::size_t>(cqi - 1)].spectral_efficiency;
    return eff * in.grid->subbands[static_cast<std::size_t>(s)].n_rb * 180e3;
}

inline double block_bits(const CellSchedulingInput& in, int cqi, int s)
{
    const double eff = in.cqi_table->entries[static_cast<std::size_t>(cqi - 1)].spectral_efficiency;
    const int n_rb = in.grid->subbands[static_cast<std::size_t>(s)].n_rb;
    return std::floor(eff * 180e3 * 1e-3 * n_rb * (1.0 - in.tb_overhead));
}

inline int steps_for(const PairFeedback& fb, std::size_t u, std::size_t d)
{
    const std::uint8_t b = fb.buckets[u * fb.dl_ues.size() + d];
    if (fb.mode.kind == PairFeedbackKind::OneBit || fb.mode.bits == 1) return b == 0 ? 0 : fb.mode.threshold_steps + 1;
    return b;
}

inline bool pair_allowed(const PairFeedback& fb, std::size_t u, std::size_t d)
{
    const bool one_bit = fb.mode.kind == PairFeedbackKind::OneBit || fb.mode.bits == 1;
    return !one_bit || fb.buckets[u * fb.dl_ues.size() + d] == 0;
}

inline int paired_cqi(const CellSchedulingInput& in, std::size_t d, std::size_t u, int s)
{
    const int alone = in.dl_cqi_alone[d * in.grid->size() + s];
    return std::max(0, alone - steps_for(*in.pairs, u, d));
}

/// One candidate with its sort key: larger utility first, then smaller ids.
struct Option {
    double utility = 0.0;
    std::size_t d = kNone;
    std::size_t u = kNone;
    int dl_cqi = 0;
};

inline std::optional<Option> best_of(std::vector<Option> options)
{
    if (options.empty()) return std::nullopt;
    std::stable_sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
        if (a.utility != b.utility) return a.utility > b.utility;
        return std::tie(a.d, a.u) < std::tie(b.d, b.u);
    });
    return options.front();
}

struct Backlogs {
    std::vector<double> dl;
    std::vector<double> ul;
};

inline void put_reservation(SubbandAssignment& a, const Reservation& r)
{
    if (r.direction == Direction::Downlink) {
        a.dl_ue = r.ue, a.dl_mcs = r.mcs, a.dl_power_dbm_per_rb = r.power_dbm_per_rb, a.dl_retx = true;
    } else {
        a.ul_ue = r.ue, a.ul_mcs = r.mcs, a.ul_power_dbm_per_rb = r.power_dbm_per_rb, a.ul_retx = true;
    }
}

inline const Reservation* reserved(const CellSchedulingInput& in, int s, Direction dir)
{
    for (const auto& r : in.reservations)
        if (r.subband == s && r.direction == dir) return &r;
    return nullptr;
}

inline std::size_t index_of(const std::vector<NodeId>& ues, NodeId id)
{
    return static_cast<std::size_t>(std::find(ues.begin(), ues.end(), id) - ues.begin());
}

inline void take_dl(const CellSchedulingInput& in, Backlogs& bl, SubbandAssignment& a, std::size_t d, int cqi, int s)
{
    a.dl_ue = in.dl_ues[d];
    a.dl_mcs = cqi - 1;
    bl.dl[d] -= block_bits(in, cqi, s);
}

inline void take_ul(const CellSchedulingInput& in, Backlogs& bl, SubbandAssignment& a, std::size_t u, int s)
{
    const int cqi = in.ul_cqi[u * in.grid->size() + s];
    a.ul_ue = in.ul_ues[u];
    a.ul_mcs = cqi - 1;
    bl.ul[u] -= block_bits(in, cqi, s);
}

inline std::vector<Option> dl_candidates(const CellSchedulingInput& in, const Backlogs& bl, int s)
{
    std::vector<Option> out;
    for (std::size_t d = 0; d < in.dl_ues.size(); ++d) {
        const int c = in.dl_cqi[d * in.grid->size() + s];
        if (bl.dl[d] > 0.0 && c >= 1) out.push_back({rate(in, c, s) / in.dl_r_avg[d], d, kNone, c});
    }
    return out;
}

inline std::vector<Option> ul_candidates(const CellSchedulingInput& in, const Backlogs& bl, int s)
{
    std::vector<Option> out;
    for (std::size_t u = 0; u < in.ul_ues.size(); ++u) {
        const int c = in.ul_cqi[u * in.grid->size() + s];
        if (bl.ul[u] > 0.0 && c >= 1) out.push_back({rate(in, c, s) / in.ul_r_avg[u], kNone, u, 0});
    }
    return out;
}

inline ScheduleDecision basic(const CellSchedulingInput& in)
{
    ScheduleDecision out{in.cell, std::vector<SubbandAssignment>(static_cast<std::size_t>(in.grid->size()))};
    Backlogs bl{in.dl_backlog_bits, in.ul_backlog_bits};
    for (int s = 0; s < in.grid->size(); ++s) {
        auto& a = out.subbands[static_cast<std::size_t>(s)];
        if (const auto* r = reserved(in, s, Direction::Downlink)) {
            put_reservation(a, *r);
        } else if (in.grid->allows(s, Direction::Downlink)) {
            if (auto o = best_of(dl_candidates(in, bl, s))) take_dl(in, bl, a, o->d, o->dl_cqi, s);
        }
        if (const auto* r = reserved(in, s, Direction::Uplink)) {
            put_reservation(a, *r);
        } else if (in.grid->allows(s, Direction::Uplink)) {
            if (auto o = best_of(ul_candidates(in, bl, s))) take_ul(in, bl, a, o->u, s);
        }
    }
    return out;
}

inline ScheduleDecision flexible(const CellSchedulingInput& in)
{
    ScheduleDecision out{in.cell, std::vector<SubbandAssignment>(static_cast<std::size_t>(in.grid->size()))};
    Backlogs bl{in.dl_backlog_bits, in.ul_backlog_bits};
    for (int s = 0; s < in.grid->size(); ++s) {
        auto& a = out.subbands[static_cast<std::size_t>(s)];
        const auto* rd = reserved(in, s, Direction::Downlink);
        const auto* ru = reserved(in, s, Direction::Uplink);
        if (rd || ru) {
            put_reservation(a, rd ? *rd : *ru);
            continue;
        }
        const auto d = best_of(dl_candidates(in, bl, s));
        const auto u = best_of(ul_candidates(in, bl, s));
        if (d && (!u || d->utility >= u->utility))
            take_dl(in, bl, a, d->d, d->dl_cqi, s);
        else if (u)
            take_ul(in, bl, a, u->u, s);
    }
    return out;
}

inline ScheduleDecision joint(const CellSchedulingInput& in)
{
    ScheduleDecision out{in.cell, std::vector<SubbandAssignment>(static_cast<std::size_t>(in.grid->size()))};
    Backlogs bl{in.dl_backlog_bits, in.ul_backlog_bits};
    const PairFeedback& fb = *in.pairs;
    for (int s = 0; s < in.grid->size(); ++s) {
        auto& a = out.subbands[static_cast<std::size_t>(s)];
        const auto* rd = reserved(in, s, Direction::Downlink);
        const auto* ru = reserved(in, s, Direction::Uplink);
        if (rd && ru) {
            put_reservation(a, *rd);
            put_reservation(a, *ru);
            continue;
        }
        if (rd) {
            put_reservation(a, *rd);
            const std::size_t d = index_of(in.dl_ues, rd->ue);
            std::vector<Option> opts;
            for (const Option& o : ul_candidates(in, bl, s))
                if (pair_allowed(fb, o.u, d) && paired_cqi(in, d, o.u, s) - 1 >= rd->mcs) opts.push_back(o);
            if (auto o = best_of(opts)) take_ul(in, bl, a, o->u, s);
            continue;
        }
        if (ru) {
            put_reservation(a, *ru);
            const std::size_t u = index_of(in.ul_ues, ru->ue);
            std::vector<Option> opts;
            for (std::size_t d = 0; d < in.dl_ues.size(); ++d) {
                const int c = paired_cqi(in, d, u, s);
                if (bl.dl[d] > 0.0 && c >= 1 && pair_allowed(fb, u, d))
                    opts.push_back({rate(in, c, s) / in.dl_r_avg[d], d, kNone, c});
            }
            if (auto o = best_of(opts)) take_dl(in, bl, a, o->d, o->dl_cqi, s);
            continue;
        }

        std::vector<Option> opts;
        const auto uls = ul_candidates(in, bl, s);
        for (const Option& o : uls) opts.push_back(o);
        for (std::size_t d = 0; d < in.dl_ues.size(); ++d) {
            if (bl.dl[d] <= 0.0) continue;
            const int alone = in.dl_cqi_alone[d * in.grid->size() + s];
            if (alone >= 1) opts.push_back({rate(in, alone, s) / in.dl_r_avg[d], d, kNone, alone});
            for (const Option& o : uls) {
                if (!pair_allowed(fb, o.u, d)) continue;
                const int c = paired_cqi(in, d, o.u, s);
                if (c >= 1) opts.push_back({rate(in, c, s) / in.dl_r_avg[d] + o.utility, d, o.u, c});
            }
        }
        const auto best = best_of(opts);
        if (!best) continue;
        if (best->d != kNone) take_dl(in, bl, a, best->d, best->dl_cqi, s);
        if (best->u != kNone) take_ul(in, bl, a, best->u, s);
    }
    return out;
}

/// Highest MCS whose logistic BLER at sinr is at most the target (plus a
/// rounding allowance at the threshold itself).
inline int mcs_linear_scan(double sinr_db, const McsTable& table)
{
    int best = 0;
    for (int m = 0; m < table.size(); ++m) {
        const auto& e = table.entries[static_cast<std::size_t>(m)];
        const double p = 1.0 / (1.0 + std::exp(e.bler_slope * (sinr_db - e.sinr_50pct_db)));
        if (p <= kBlerTarget + 1e-9) best = m;
    }
    return best;
}

/// Percentile from a fully sorted copy, linear between order statistics.
inline double sorted_percentile(std::vector<double> v, double pct)
{
    std::sort(v.begin(), v.end());
    if (v.size() == 1) return v[0];
    const double pos = pct / 100.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

/// Random scheduling input for one cell. Values are drawn from small sets
/// so ties are common.
struct RandomCell {
    ResourceGrid grid;
    CqiTable cqi = CqiTable::lte();
    McsTable mcs = McsTable::from_cqi(CqiTable::lte());
    PairFeedback pairs;
    CellSchedulingInput in;
};

inline void fill_random_cell(RandomCell& rc, DuplexMode mode, std::mt19937_64& rng, bool with_pairs)
{
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    rc.grid = ResourceGrid::make(mode, 100, 12);
    auto& in = rc.in;
    in = CellSchedulingInput{};
    in.cell = static_cast<CellId>(pick(0, 20));
    in.grid = &rc.grid;
    in.cqi_table = &rc.cqi;
    in.mcs_table = &rc.mcs;
    const int n_dl = pick(1, 6);
    const int n_ul = pick(1, 6);
    NodeId next = static_cast<NodeId>(pick(0, 50));
    for (int i = 0; i < n_dl + n_ul; ++i) {
        next += static_cast<NodeId>(pick(1, 3));
        // Interleave directions so ids are not contiguous per direction.
        if ((i % 2 == 0 && static_cast<int>(in.dl_ues.size()) < n_dl) || static_cast<int>(in.ul_ues.size()) >= n_ul)
            in.dl_ues.push_back(next);
        else
            in.ul_ues.push_back(next);
    }
    const int ns = rc.grid.size();
    const double r_levels[] = {1e3, 5e4, 1e5, 1e6, 2.5e6};
    const double b_levels[] = {0.0, 300.0, 4000.0, 20000.0, kInfiniteBacklog};
    for (std::size_t d = 0; d < in.dl_ues.size(); ++d) {
        for (int s = 0; s < ns; ++s) {
            const int c = pick(0, 15) < 2 ? 0 : pick(1, 15);
            in.dl_cqi.push_back(static_cast<std::uint8_t>(c));
            in.dl_cqi_alone.push_back(static_cast<std::uint8_t>(std::min(15, c + pick(0, 3))));
        }
        in.dl_r_avg.push_back(r_levels[pick(0, 4)]);
        in.dl_backlog_bits.push_back(b_levels[pick(0, 4)]);
    }
    for (std::size_t u = 0; u < in.ul_ues.size(); ++u) {
        for (int s = 0; s < ns; ++s) in.ul_cqi.push_back(static_cast<std::uint8_t>(pick(0, 15) < 2 ? 0 : pick(1, 15)));
        in.ul_r_avg.push_back(r_levels[pick(0, 4)]);
        in.ul_backlog_bits.push_back(b_levels[pick(0, 4)]);
    }

    // Retransmissions on a few subbands, respecting what the grid allows.
    for (int s = 0; s < ns; ++s) {
        for (Direction dir : {Direction::Downlink, Direction::Uplink}) {
            if (!rc.grid.allows(s, dir) || pick(0, 9) != 0) continue;
            if (mode == DuplexMode::FlexibleDuplex && reserved(in, s, Direction::Downlink)) continue;
            const auto& ues = dir == Direction::Downlink ? in.dl_ues : in.ul_ues;
            in.reservations.push_back(
                {s, dir, ues[static_cast<std::size_t>(pick(0, static_cast<int>(ues.size()) - 1))], pick(0, 14), -10.0});
        }
    }

    if (with_pairs) {
        PairFeedbackMode m;
        m.kind = pick(0, 1) ? PairFeedbackKind::OneBit : PairFeedbackKind::MultiBit;
        m.bits = pick(1, 4);
        m.threshold_steps = pick(0, 2);
        rc.pairs = PairFeedback{};
        rc.pairs.mode = m;
        rc.pairs.cell = in.cell;
        rc.pairs.ul_ues = in.ul_ues;
        rc.pairs.dl_ues = in.dl_ues;
        for (std::size_t i = 0; i < in.ul_ues.size() * in.dl_ues.size(); ++i)
            rc.pairs.buckets.push_back(quantize_degradation(pick(0, 6), m));
        in.pairs = &rc.pairs;
    }
}

}  // namespace fdsim::oracle
