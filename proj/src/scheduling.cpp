// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/scheduling.hpp"

#include <algorithm>
#include <optional>

namespace fdsim {

std::string_view to_string(SchedulerKind k)
{
    switch (k) {
    case SchedulerKind::Basic:
        return "basic";
    case SchedulerKind::Joint:
        return "joint";
    case SchedulerKind::Flexible:
        return "flexible";
    case SchedulerKind::Fdd:
        return "fdd";
    }
    return "?";
}

SchedulerKind scheduler_from_string(std::string_view s)
{
    if (s == "basic") return SchedulerKind::Basic;
    if (s == "joint") return SchedulerKind::Joint;
    if (s == "flexible") return SchedulerKind::Flexible;
    if (s == "fdd") return SchedulerKind::Fdd;
    throw ConfigError("unknown scheduler '" + std::string(s) + "' (expected basic, joint, flexible or fdd)");
}

void PfConfig::validate() const
{
    if (time_constant_tti < 1) throw ConfigError("pf.time_constant_tti must be >= 1");
    if (!(floor_bps > 0.0)) throw ConfigError("pf.floor_bps must be positive");
}

PfState::PfState(std::size_t n_ue, PfConfig cfg) : cfg_(cfg), r_avg_(n_ue, cfg.floor_bps) { cfg_.validate(); }

void update_pf(PfState& pf, std::span<const double> served_bits)
{
    FDSIM_EXPECTS(served_bits.size() == pf.r_avg_.size(), "served bits must cover every UE");
    const double w = 1.0 / pf.cfg_.time_constant_tti;
    for (std::size_t i = 0; i < served_bits.size(); ++i) {
        const double r = (1.0 - w) * pf.r_avg_[i] + w * served_bits[i] / kTtiSeconds;
        pf.r_avg_[i] = std::max(r, pf.cfg_.floor_bps);
    }
}

double estimated_rate_bps(int cqi, int n_rb, const CqiTable& table)
{
    return table.efficiency(cqi) * n_rb * kRbBandwidthHz;
}

double pf_metric(double rate_bps, double r_avg_bps)
{
    return rate_bps / r_avg_bps;
}

void CellSchedulingInput::validate() const
{
    FDSIM_EXPECTS(grid && cqi_table && mcs_table, "scheduling input lacks grid or tables");
    const std::size_t ns = static_cast<std::size_t>(grid->size());
    FDSIM_EXPECTS(dl_cqi.size() == dl_ues.size() * ns && dl_cqi_alone.size() == dl_ues.size() * ns, "DL CQI size");
    FDSIM_EXPECTS(ul_cqi.size() == ul_ues.size() * ns, "UL CQI size");
    FDSIM_EXPECTS(dl_r_avg.size() == dl_ues.size() && dl_backlog_bits.size() == dl_ues.size(), "DL state size");
    FDSIM_EXPECTS(ul_r_avg.size() == ul_ues.size() && ul_backlog_bits.size() == ul_ues.size(), "UL state size");
    FDSIM_EXPECTS(std::is_sorted(dl_ues.begin(), dl_ues.end()) && std::is_sorted(ul_ues.begin(), ul_ues.end()),
                  "UE lists must be sorted by id");
    if (pairs) FDSIM_EXPECTS(pairs->dl_ues == dl_ues && pairs->ul_ues == ul_ues, "pair feedback does not match the cell");
}

int paired_dl_cqi(const CellSchedulingInput& in, std::size_t d, std::size_t u, int s)
{
    return std::max(0, in.dl_cqi_alone_at(d, s) - in.pairs->degradation_steps(u, d));
}

namespace {

struct Slots {
    std::vector<std::optional<Reservation>> dl;
    std::vector<std::optional<Reservation>> ul;
};

Slots reserved_slots(const CellSchedulingInput& in)
{
    Slots r;
    r.dl.resize(static_cast<std::size_t>(in.n_subbands()));
    r.ul.resize(static_cast<std::size_t>(in.n_subbands()));
    for (const Reservation& res : in.reservations) {
        FDSIM_EXPECTS(res.subband >= 0 && res.subband < in.n_subbands(), "reservation outside the grid");
        auto& slot = (res.direction == Direction::Downlink ? r.dl : r.ul)[static_cast<std::size_t>(res.subband)];
        FDSIM_EXPECTS(!slot, "two retransmissions on one subband and direction");
        slot = res;
    }
    return r;
}

void apply(SubbandAssignment& a, const Reservation& r)
{
    if (r.direction == Direction::Downlink) {
        a.dl_ue = r.ue;
        a.dl_mcs = r.mcs;
        a.dl_power_dbm_per_rb = r.power_dbm_per_rb;
        a.dl_retx = true;
    } else {
        a.ul_ue = r.ue;
        a.ul_mcs = r.mcs;
        a.ul_power_dbm_per_rb = r.power_dbm_per_rb;
        a.ul_retx = true;
    }
}

/// Per-TTI scheduling scratch: remaining backlog after earlier subbands.
class Pass {
  public:
    explicit Pass(const CellSchedulingInput& in) : in_(in), dl_left_(in.dl_backlog_bits), ul_left_(in.ul_backlog_bits)
    {
        in.validate();
        decision_.cell = in.cell;
        decision_.subbands.resize(static_cast<std::size_t>(in.n_subbands()));
    }

    int n_rb(int s) const { return in_.grid->subbands[static_cast<std::size_t>(s)].n_rb; }

    double dl_metric(std::size_t d, int cqi, int s) const
    {
        return pf_metric(estimated_rate_bps(cqi, n_rb(s), *in_.cqi_table), in_.dl_r_avg[d]);
    }
    double ul_metric(std::size_t u, int cqi, int s) const
    {
        return pf_metric(estimated_rate_bps(cqi, n_rb(s), *in_.cqi_table), in_.ul_r_avg[u]);
    }
    bool dl_ready(std::size_t d) const { return dl_left_[d] > 0.0; }
    bool ul_ready(std::size_t u) const { return ul_left_[u] > 0.0; }

    /// Best DL UE at its aggregate CQI; lowest id wins ties.
    std::optional<std::size_t> best_dl(int s, double* metric) const
    {
        std::optional<std::size_t> best;
        double m_best = 0.0;
        for (std::size_t d = 0; d < in_.dl_ues.size(); ++d) {
            const int c = in_.dl_cqi_at(d, s);
            if (!dl_ready(d) || c < 1) continue;
            const double m = dl_metric(d, c, s);
            if (!best || m > m_best) best = d, m_best = m;
        }
        if (metric) *metric = m_best;
        return best;
    }

    std::optional<std::size_t> best_ul(int s, double* metric) const
    {
        std::optional<std::size_t> best;
        double m_best = 0.0;
        for (std::size_t u = 0; u < in_.ul_ues.size(); ++u) {
            const int c = in_.ul_cqi_at(u, s);
            if (!ul_ready(u) || c < 1) continue;
            const double m = ul_metric(u, c, s);
            if (!best || m > m_best) best = u, m_best = m;
        }
        if (metric) *metric = m_best;
        return best;
    }

    void assign_dl(int s, std::size_t d, int cqi)
    {
        auto& a = decision_.subbands[static_cast<std::size_t>(s)];
        a.dl_ue = in_.dl_ues[d];
        a.dl_mcs = mcs_for_cqi(cqi);
        dl_left_[d] -= tb_size(a.dl_mcs, n_rb(s), *in_.mcs_table, in_.tb_overhead);
    }

    void assign_ul(int s, std::size_t u, int cqi)
    {
        auto& a = decision_.subbands[static_cast<std::size_t>(s)];
        a.ul_ue = in_.ul_ues[u];
        a.ul_mcs = mcs_for_cqi(cqi);
        ul_left_[u] -= tb_size(a.ul_mcs, n_rb(s), *in_.mcs_table, in_.tb_overhead);
    }

    SubbandAssignment& at(int s) { return decision_.subbands[static_cast<std::size_t>(s)]; }
    ScheduleDecision take() { return std::move(decision_); }

  private:
    const CellSchedulingInput& in_;
    std::vector<double> dl_left_;
    std::vector<double> ul_left_;
    ScheduleDecision decision_;
};

std::size_t local_index(const std::vector<NodeId>& ues, NodeId id)
{
    const auto it = std::lower_bound(ues.begin(), ues.end(), id);
    FDSIM_EXPECTS(it != ues.end() && *it == id, "reserved UE does not belong to the cell");
    return static_cast<std::size_t>(it - ues.begin());
}

}  // namespace

ScheduleDecision schedule_basic(const CellSchedulingInput& in)
{
    Pass pass(in);
    const Slots res = reserved_slots(in);
    for (int s = 0; s < in.n_subbands(); ++s) {
        const auto si = static_cast<std::size_t>(s);
        if (res.dl[si]) {
            apply(pass.at(s), *res.dl[si]);
        } else if (in.grid->allows(s, Direction::Downlink)) {
            if (auto d = pass.best_dl(s, nullptr)) pass.assign_dl(s, *d, in.dl_cqi_at(*d, s));
        }
        if (res.ul[si]) {
            apply(pass.at(s), *res.ul[si]);
        } else if (in.grid->allows(s, Direction::Uplink)) {
            if (auto u = pass.best_ul(s, nullptr)) pass.assign_ul(s, *u, in.ul_cqi_at(*u, s));
        }
    }
    return pass.take();
}

ScheduleDecision schedule_joint(const CellSchedulingInput& in)
{
    FDSIM_EXPECTS(in.pairs != nullptr, "joint scheduling needs pair feedback");
    FDSIM_EXPECTS(in.grid->mode == DuplexMode::FullDuplex, "joint scheduling needs a full-duplex grid");
    Pass pass(in);
    const Slots res = reserved_slots(in);
    const std::size_t n_dl = in.dl_ues.size();
    const std::size_t n_ul = in.ul_ues.size();
    const auto allowed = [&](std::size_t u, std::size_t d) { return in.pairs->schedulable(u, d); };

    std::vector<double> ul_m(n_ul);
    for (int s = 0; s < in.n_subbands(); ++s) {
        const auto si = static_cast<std::size_t>(s);
        if (res.dl[si] && res.ul[si]) {
            apply(pass.at(s), *res.dl[si]);
            apply(pass.at(s), *res.ul[si]);
            continue;
        }
        if (res.dl[si]) {
            // Partner for a pending DL retransmission: it must keep its MCS decodable.
            const Reservation& r = *res.dl[si];
            const std::size_t d = local_index(in.dl_ues, r.ue);
            apply(pass.at(s), r);
            std::optional<std::size_t> best;
            double m_best = 0.0;
            for (std::size_t u = 0; u < n_ul; ++u) {
                const int c = in.ul_cqi_at(u, s);
                if (!pass.ul_ready(u) || c < 1 || !allowed(u, d)) continue;
                if (mcs_for_cqi(paired_dl_cqi(in, d, u, s)) < r.mcs) continue;
                const double m = pass.ul_metric(u, c, s);
                if (!best || m > m_best) best = u, m_best = m;
            }
            if (best) pass.assign_ul(s, *best, in.ul_cqi_at(*best, s));
            continue;
        }
        if (res.ul[si]) {
            const Reservation& r = *res.ul[si];
            const std::size_t u = local_index(in.ul_ues, r.ue);
            apply(pass.at(s), r);
            std::optional<std::size_t> best;
            int best_cqi = 0;
            double m_best = 0.0;
            for (std::size_t d = 0; d < n_dl; ++d) {
                const int c = paired_dl_cqi(in, d, u, s);
                if (!pass.dl_ready(d) || c < 1 || !allowed(u, d)) continue;
                const double m = pass.dl_metric(d, c, s);
                if (!best || m > m_best) best = d, m_best = m, best_cqi = c;
            }
            if (best) pass.assign_dl(s, *best, best_cqi);
            continue;
        }

        for (std::size_t u = 0; u < n_ul; ++u) {
            const int c = in.ul_cqi_at(u, s);
            ul_m[u] = (pass.ul_ready(u) && c >= 1) ? pass.ul_metric(u, c, s) : -1.0;
        }
        // Visit options in tie-break order (DL id ascending with "none" last,
        // then UL id likewise) and keep the first strict maximum.
        bool found = false;
        double u_best = 0.0;
        std::size_t d_best = n_dl, ul_best = n_ul;
        int c_best = 0;
        const auto consider = [&](double utility, std::size_t d, std::size_t u, int c) {
            if (!found || utility > u_best) found = true, u_best = utility, d_best = d, ul_best = u, c_best = c;
        };
        for (std::size_t d = 0; d <= n_dl; ++d) {
            if (d < n_dl && !pass.dl_ready(d)) continue;
            for (std::size_t u = 0; u <= n_ul; ++u) {
                if (u < n_ul && ul_m[u] < 0.0) continue;
                if (d == n_dl && u == n_ul) continue;
                if (d == n_dl) {
                    consider(ul_m[u], d, u, 0);
                } else if (u == n_ul) {
                    const int c = in.dl_cqi_alone_at(d, s);
                    if (c >= 1) consider(pass.dl_metric(d, c, s), d, u, c);
                } else {
                    if (!allowed(u, d)) continue;
                    const int c = paired_dl_cqi(in, d, u, s);
                    if (c >= 1) consider(pass.dl_metric(d, c, s) + ul_m[u], d, u, c);
                }
            }
        }
        if (!found) continue;
        if (d_best < n_dl) pass.assign_dl(s, d_best, c_best);
        if (ul_best < n_ul) pass.assign_ul(s, ul_best, in.ul_cqi_at(ul_best, s));
    }
    return pass.take();
}

ScheduleDecision schedule_flexible(const CellSchedulingInput& in)
{
    FDSIM_EXPECTS(in.grid->mode == DuplexMode::FlexibleDuplex, "flexible scheduling needs a flexible grid");
    Pass pass(in);
    const Slots res = reserved_slots(in);
    for (int s = 0; s < in.n_subbands(); ++s) {
        const auto si = static_cast<std::size_t>(s);
        FDSIM_EXPECTS(!(res.dl[si] && res.ul[si]), "flexible subband reserved in both directions");
        if (res.dl[si]) {
            apply(pass.at(s), *res.dl[si]);
            continue;
        }
        if (res.ul[si]) {
            apply(pass.at(s), *res.ul[si]);
            continue;
        }
        double m_dl = 0.0, m_ul = 0.0;
        const auto d = pass.best_dl(s, &m_dl);
        const auto u = pass.best_ul(s, &m_ul);
        if (d && (!u || m_dl >= m_ul))
            pass.assign_dl(s, *d, in.dl_cqi_at(*d, s));
        else if (u)
            pass.assign_ul(s, *u, in.ul_cqi_at(*u, s));
    }
    return pass.take();
}

ScheduleDecision schedule(SchedulerKind kind, const CellSchedulingInput& in)
{
    switch (kind) {
    case SchedulerKind::Basic:
    case SchedulerKind::Fdd:
        return schedule_basic(in);
    case SchedulerKind::Joint:
        return schedule_joint(in);
    case SchedulerKind::Flexible:
        return schedule_flexible(in);
    }
    return schedule_basic(in);
}

}  // namespace fdsim
