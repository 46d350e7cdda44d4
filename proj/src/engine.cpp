// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>
#include <tuple>

#include "fdsim/rng.hpp"
#include "fdsim/stats.hpp"

namespace fdsim {

void RunConfig::validate() const
{
    if (modes.empty()) throw ConfigError("modes: at least one duplex mode required");
    if (drops < 1) throw ConfigError("drops must be >= 1");
    if (ttis < 0) throw ConfigError("ttis must be >= 0");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (fd_scheduler == SchedulerKind::Flexible || fd_scheduler == SchedulerKind::Fdd)
        throw ConfigError("scheduler: FD mode takes basic or joint");
    nulling.validate();
    sic.validate();
    power.validate();
    if (feedback.pair_mode.bits < 1 || feedback.pair_mode.bits > 8) throw ConfigError("feedback.pair_bits must be within [1, 8]");
    if (feedback.default_cqi < 0 || feedback.default_cqi > 15) throw ConfigError("feedback.default_cqi must be within [0, 15]");
    if (feedback.delay_tti < 0) throw ConfigError("feedback.delay_tti must be >= 0");
    if (feedback.pair_update_period_tti < 1) throw ConfigError("feedback.pair_update_period_tti must be >= 1");
    pf.validate();
    harq.validate();
    if (!(link.tb_overhead >= 0.0 && link.tb_overhead <= 1.0)) throw ConfigError("link.tb_overhead must be within [0, 1]");
    if (!(link.bler_slope > 0.0)) throw ConfigError("link.bler_slope must be positive");
    if (grid.total_rb < 2 || grid.rb_per_subband < 1) throw ConfigError("grid: total_rb >= 2 and rb_per_subband >= 1 required");
    traffic.ftp.validate();
    if (!(traffic.dl_ul_ratio > 0.0)) throw ConfigError("traffic.dl_ul_ratio must be positive");
    for (double l : traffic.sweep_dl_loads_bps)
        if (!(l > 0.0)) throw ConfigError("traffic.sweep_dl_loads_bps: loads must be positive");
    if (boost.automatic && !(boost.criteria.step_db > 0.0)) throw ConfigError("boost.step_db must be positive");
}

SchedulerKind scheduler_for(DuplexMode mode, SchedulerKind fd_scheduler)
{
    switch (mode) {
    case DuplexMode::FullDuplex:
        return fd_scheduler;
    case DuplexMode::Fdd:
        return SchedulerKind::Fdd;
    case DuplexMode::FlexibleDuplex:
        return SchedulerKind::Flexible;
    }
    return SchedulerKind::Basic;
}

std::uint64_t drop_seed(std::uint64_t master, int drop)
{
    return derive_seed(master, {0x64726f70ULL, static_cast<std::uint64_t>(drop)});
}

DropSetup prepare_drop(const RunConfig& cfg, int drop)
{
    DropSetup s;
    s.drop = drop;
    s.seed = drop_seed(cfg.seed, drop);
    s.layout = generate_layout(cfg.scenario, s.seed, cfg.layout);
    s.gains = build_gain_matrix(s.layout, cfg.nulling, s.layout.wrap, s.seed);
    return s;
}

namespace {

constexpr double kIsolatedDb = -400.0;

LinkGainMatrix isolate_cross_links(const LinkGainMatrix& g)
{
    LinkGainMatrix out = g;
    for (std::size_t a = 0; a < out.ue_to_ue.rows(); ++a)
        for (std::size_t b = 0; b < out.ue_to_ue.cols(); ++b) out.ue_to_ue.at(a, b) = kIsolatedDb;
    for (std::size_t a = 0; a < out.bs_to_bs.rows(); ++a)
        for (std::size_t b = 0; b < out.bs_to_bs.cols(); ++b) out.bs_to_bs.at(a, b) = kIsolatedDb;
    return out;
}

/// The TTI loop of one drop in one mode.
class DropRunner {
  public:
    DropRunner(const RunConfig& cfg, const DropSetup& setup, DuplexMode mode)
        : cfg_(cfg),
          layout_(setup.layout),
          gains_(cfg.cross_links ? setup.gains : isolate_cross_links(setup.gains)),
          mode_(mode),
          kind_(scheduler_for(mode, cfg.fd_scheduler)),
          grid_(ResourceGrid::make(mode, cfg.grid.total_rb, cfg.grid.rb_per_subband)),
          sic_(cfg.cross_links ? cfg.sic : SelfInterferenceConfig{-kIsolatedDb}),
          power_(cfg.power),
          model_(layout_, gains_, grid_, cfg.noise, sic_),
          cqi_(CqiTable::lte()),
          mcs_(McsTable::from_cqi(cqi_, cfg.link.bler_slope)),
          feedback_(cfg.feedback, layout_.dl_ues.size(), layout_.ul_ues.size(), grid_.size()),
          pf_(layout_.ues.size(), cfg.pf),
          harq_(cfg.harq),
          queues_(TrafficQueues::full_buffer(layout_.ues.size()))
    {
        result_.mode = mode;
        result_.drop = setup.drop;
        result_.ttis = cfg.ttis;
        result_.dl_ues = layout_.dl_ues;
        result_.ul_ues = layout_.ul_ues;
        if (gains_.clamped_links > 0)
            result_.warnings.push_back("propagation: " + std::to_string(gains_.clamped_links) +
                                       " links below the model minimum distance were clamped");

        // Power boosting is an FD countermeasure; the other modes keep plain OLPC.
        if (mode == DuplexMode::FullDuplex) {
            if (cfg.boost.automatic) {
                BoostCriteria crit = cfg.boost.criteria;
                crit.self_interference = true;
                PowerConfig base = cfg.power;
                base.boost_db = 0.0;
                result_.boost = select_boost(layout_, gains_, base, cfg.noise, sic_, crit);
                power_.boost_db = result_.boost.boost_db;
                if (!result_.boost.warning.empty()) result_.warnings.push_back(result_.boost.warning);
            }
        } else {
            power_.boost_db = 0.0;
        }
        result_.boost_db = power_.boost_db;

        ul_nominal_.assign(layout_.ues.size(), kFloorDbm);
        for (NodeId u : layout_.ul_ues) ul_nominal_[u] = olpc_power(layout_, gains_, u, power_);
        bs_rb_ = power_.bs_dbm_per_rb();

        for (std::size_t c = 0; c < layout_.cells.size(); ++c)
            streams_.emplace_back(stream_seed(setup.seed, StreamTag::Harq, c));

        if (cfg.traffic.kind == TrafficKind::Ftp3) {
            const auto& ftp = cfg.traffic.ftp;
            const auto size = static_cast<std::int64_t>(std::llround(ftp.file_size_bits));
            const std::uint64_t tseed = stream_seed(setup.seed, StreamTag::Traffic);
            auto dl = generate_arrivals(ftp.per_ue_rate(Direction::Downlink, layout_.dl_ues.size()), layout_.dl_ues, size,
                                        cfg.ttis, derive_seed(tseed, {1}));
            auto ul = generate_arrivals(ftp.per_ue_rate(Direction::Uplink, layout_.ul_ues.size()), layout_.ul_ues, size,
                                        cfg.ttis, derive_seed(tseed, {2}));
            dl.insert(dl.end(), ul.begin(), ul.end());
            std::stable_sort(dl.begin(), dl.end(), [](const BurstRecord& a, const BurstRecord& b) {
                return std::tie(a.arrival_tti, a.ue) < std::tie(b.arrival_tti, b.ue);
            });
            queues_ = TrafficQueues::bursty(layout_.ues.size(), std::move(dl));
        }

        if (kind_ == SchedulerKind::Joint) prepare_pairs();
        decisions_.resize(layout_.cells.size());
        served_tti_.assign(layout_.ues.size(), 0.0);
        served_total_.assign(layout_.ues.size(), 0);
    }

    DropResult run()
    {
        for (Tti t = 0; t < cfg_.ttis; ++t) step(t);
        finish();
        return std::move(result_);
    }

  private:
    void prepare_pairs()
    {
        const std::size_t nc = layout_.cells.size();
        const double n_ue = db_to_linear(cfg_.noise.ue_dbm_per_rb());
        const double p_bs = db_to_linear(bs_rb_);
        for (std::size_t c = 0; c < nc; ++c) {
            const auto& dls = layout_.dl_ues_of_cell[c];
            std::vector<DlBaseline> base;
            for (NodeId d : dls) {
                double i = n_ue;
                for (std::size_t o = 0; o < nc; ++o)
                    if (o != c) i += p_bs * model_.bs_to_ue(static_cast<CellId>(o), d);
                const double s = p_bs * model_.bs_to_ue(static_cast<CellId>(c), d);
                base.push_back({linear_to_db(s), linear_to_db(s / i)});
            }
            baselines_.push_back(std::move(base));
        }
    }

    std::vector<PairFeedback> measure_pairs() const
    {
        std::vector<PairFeedback> out;
        for (std::size_t c = 0; c < layout_.cells.size(); ++c) {
            const auto m = measure_pair_interference(layout_, static_cast<CellId>(c), gains_, ul_nominal_);
            out.push_back(quantize_pair_feedback(m, baselines_[c], cfg_.feedback.pair_mode, cqi_));
        }
        return out;
    }

    CellSchedulingInput cell_input(CellId c, const CqiSnapshot& snap, const std::vector<Reservation>& res) const
    {
        CellSchedulingInput in;
        in.cell = c;
        in.grid = &grid_;
        in.cqi_table = &cqi_;
        in.mcs_table = &mcs_;
        in.tb_overhead = cfg_.link.tb_overhead;
        in.dl_ues = layout_.dl_ues_of_cell[c];
        in.ul_ues = layout_.ul_ues_of_cell[c];
        const int ns = grid_.size();
        // Flexible duplex never hears its own UL on a DL subband.
        const bool own_ul_excluded = mode_ == DuplexMode::FlexibleDuplex;
        for (NodeId d : in.dl_ues) {
            const std::size_t gi = model_.dl_index(d);
            for (int s = 0; s < ns; ++s) {
                const auto alone = static_cast<std::uint8_t>(snap.dl_alone_cqi(gi, s));
                in.dl_cqi.push_back(own_ul_excluded ? alone : static_cast<std::uint8_t>(snap.dl_cqi(gi, s)));
                in.dl_cqi_alone.push_back(alone);
            }
            in.dl_r_avg.push_back(pf_.r_avg(d));
            in.dl_backlog_bits.push_back(queues_.backlog_bits(d));
        }
        for (NodeId u : in.ul_ues) {
            const std::size_t gi = model_.ul_index(u);
            for (int s = 0; s < ns; ++s) in.ul_cqi.push_back(static_cast<std::uint8_t>(snap.ul_cqi(gi, s)));
            in.ul_r_avg.push_back(pf_.r_avg(u));
            in.ul_backlog_bits.push_back(queues_.backlog_bits(u));
        }
        if (kind_ == SchedulerKind::Joint) in.pairs = &feedback_.pair_feedback()[c];
        in.reservations = res;
        return in;
    }

    /// DL at full per-RB power; UL at OLPC, scaled down when the UE's total
    /// allocation would exceed p_max, with the MCS lowered to match.
    void assign_powers()
    {
        std::fill(ue_rbs_.begin(), ue_rbs_.end(), 0);
        ue_rbs_.resize(layout_.ues.size(), 0);
        for (const auto& d : decisions_)
            for (int s = 0; s < grid_.size(); ++s) {
                const auto& a = d.subbands[static_cast<std::size_t>(s)];
                if (a.ul_ue) ue_rbs_[*a.ul_ue] += grid_.subbands[static_cast<std::size_t>(s)].n_rb;
            }
        for (auto& d : decisions_)
            for (auto& a : d.subbands) {
                if (a.dl_ue) a.dl_power_dbm_per_rb = bs_rb_;
                if (!a.ul_ue) continue;
                const double nominal = ul_nominal_[*a.ul_ue];
                const double p = ue_power_per_rb(nominal, ue_rbs_[*a.ul_ue], power_.p_max_dbm);
                a.ul_power_dbm_per_rb = p;
                if (!a.ul_retx && p < nominal)
                    a.ul_mcs = std::min(a.ul_mcs, select_mcs(mcs_.at(a.ul_mcs).sinr_10pct_db + (p - nominal), mcs_));
            }
    }

    void step(Tti t)
    {
        queues_.release(t);
        const CqiSnapshot& snap = feedback_.age_and_report(t);
        if (kind_ == SchedulerKind::Joint && feedback_.pair_refresh_due(t)) feedback_.set_pair_feedback(t, measure_pairs());

        // (1) retransmissions due now
        std::vector<HarqProcess> due = harq_.take_due(t);
        std::vector<std::vector<Reservation>> res(layout_.cells.size());
        for (const auto& p : due) res[p.cell].push_back({p.subband, p.direction, p.ue, p.mcs, p.power_dbm_per_rb});

        // (2) every cell schedules on its own view
        for (std::size_t c = 0; c < layout_.cells.size(); ++c)
            decisions_[c] = schedule(kind_, cell_input(static_cast<CellId>(c), snap, res[c]));
        assign_powers();

        // (3) network-wide SINR on the concurrent decisions
        const auto sinr = model_.evaluate(decisions_);

        // (4) HARQ
        std::map<std::tuple<CellId, int, Direction>, HarqProcess> retx;
        for (auto& p : due) {
            const auto key = std::make_tuple(p.cell, p.subband, p.direction);
            retx.emplace(key, std::move(p));
        }
        std::vector<HarqProcess> active;
        std::vector<double> active_sinr;
        const auto add = [&](CellId c, int s, Direction dir, NodeId ue, int mcs, double power, bool is_retx, double sinr_db) {
            if (is_retx) {
                auto it = retx.find({c, s, dir});
                FDSIM_EXPECTS(it != retx.end() && it->second.ue == ue, "retransmission without a pending process");
                it->second.power_dbm_per_rb = power;
                active.push_back(std::move(it->second));
                retx.erase(it);
            } else {
                HarqProcess p;
                p.ue = ue;
                p.cell = c;
                p.subband = s;
                p.direction = dir;
                p.mcs = mcs;
                p.n_rb = grid_.subbands[static_cast<std::size_t>(s)].n_rb;
                p.power_dbm_per_rb = power;
                p.payload_bits = queues_.take(ue, tb_size(mcs, p.n_rb, mcs_, cfg_.link.tb_overhead), p.segments);
                if (p.payload_bits <= 0) return;
                active.push_back(std::move(p));
                auto& acc = dir == Direction::Downlink ? dl_sinr_acc_ : ul_sinr_acc_;
                acc.first += sinr_db;
                ++acc.second;
            }
            active_sinr.push_back(sinr_db);
        };
        for (std::size_t c = 0; c < decisions_.size(); ++c) {
            for (int s = 0; s < grid_.size(); ++s) {
                const auto& a = decisions_[c].subbands[static_cast<std::size_t>(s)];
                const auto& q = sinr[c][static_cast<std::size_t>(s)];
                if (a.dl_ue)
                    add(static_cast<CellId>(c), s, Direction::Downlink, *a.dl_ue, a.dl_mcs, a.dl_power_dbm_per_rb, a.dl_retx,
                        *q.dl_sinr_db);
                if (a.ul_ue)
                    add(static_cast<CellId>(c), s, Direction::Uplink, *a.ul_ue, a.ul_mcs, a.ul_power_dbm_per_rb, a.ul_retx,
                        *q.ul_sinr_db);
            }
        }
        FDSIM_EXPECTS(retx.empty(), "a due retransmission was not scheduled");
        const HarqStepResult hr = harq_step(std::move(active), active_sinr, harq_, streams_, mcs_, t);

        // (5) traffic and PF
        std::fill(served_tti_.begin(), served_tti_.end(), 0.0);
        for (const auto& p : hr.acked) {
            queues_.ack(p, t);
            served_tti_[p.ue] += static_cast<double>(p.payload_bits);
            served_total_[p.ue] += p.payload_bits;
        }
        for (const auto& p : hr.dropped) queues_.requeue(p);
        result_.acks += static_cast<std::int64_t>(hr.acked.size());
        result_.nacks += hr.nacks;
        result_.harq_failures += static_cast<std::int64_t>(hr.dropped.size());
        update_pf(pf_, served_tti_);

        // (6) what the UEs and BSs measured this TTI, visible after the delay
        const TtiMeasurement m = model_.measure(decisions_, ul_nominal_, bs_rb_);
        feedback_.push(t + 1, to_snapshot(m));

        FDSIM_EXPECTS(queues_.conserved(), "traffic bits not conserved");
    }

    CqiSnapshot to_snapshot(const TtiMeasurement& m) const
    {
        CqiSnapshot s;
        s.n_subbands = m.n_subbands;
        const auto conv = [&](const std::vector<double>& v, std::vector<std::uint8_t>& out) {
            out.resize(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<std::uint8_t>(sinr_to_cqi(v[i], cqi_));
        };
        conv(m.dl_sinr_db, s.dl);
        conv(m.dl_sinr_no_intra_db, s.dl_alone);
        conv(m.ul_sinr_db, s.ul);
        return s;
    }

    void finish()
    {
        const double seconds = static_cast<double>(cfg_.ttis) * kTtiSeconds;
        for (NodeId d : layout_.dl_ues)
            result_.dl_tput_bps.push_back(seconds > 0 ? static_cast<double>(served_total_[d]) / seconds : 0.0);
        for (NodeId u : layout_.ul_ues)
            result_.ul_tput_bps.push_back(seconds > 0 ? static_cast<double>(served_total_[u]) / seconds : 0.0);
        if (!queues_.is_full_buffer()) {
            result_.bursts = queues_.records();
            std::vector<BurstRecord> dl, ul;
            for (const auto& b : result_.bursts)
                (layout_.ues[b.ue].direction == Direction::Downlink ? dl : ul).push_back(b);
            result_.dl_perceived = perceived_throughput(dl);
            result_.ul_perceived = perceived_throughput(ul);
        }
        if (dl_sinr_acc_.second > 0) result_.mean_dl_sinr_db = dl_sinr_acc_.first / static_cast<double>(dl_sinr_acc_.second);
        if (ul_sinr_acc_.second > 0) result_.mean_ul_sinr_db = ul_sinr_acc_.first / static_cast<double>(ul_sinr_acc_.second);
        result_.arrived_bits = queues_.arrived_bits();
        result_.served_bits = queues_.served_bits();
        result_.queued_bits = queues_.queued_bits();
        result_.in_flight_bits = queues_.in_flight_bits();
    }

    const RunConfig& cfg_;
    const NetworkLayout& layout_;
    LinkGainMatrix gains_;
    DuplexMode mode_;
    SchedulerKind kind_;
    ResourceGrid grid_;
    SelfInterferenceConfig sic_;
    PowerConfig power_;
    InterferenceModel model_;
    CqiTable cqi_;
    McsTable mcs_;
    FeedbackState feedback_;
    PfState pf_;
    HarqBuffer harq_;
    TrafficQueues queues_;
    std::vector<Stream> streams_;
    std::vector<double> ul_nominal_;
    double bs_rb_ = 0.0;
    std::vector<std::vector<DlBaseline>> baselines_;
    std::vector<ScheduleDecision> decisions_;
    std::vector<int> ue_rbs_;
    std::vector<double> served_tti_;
    std::vector<std::int64_t> served_total_;
    std::pair<double, std::int64_t> dl_sinr_acc_{0.0, 0};
    std::pair<double, std::int64_t> ul_sinr_acc_{0.0, 0};
    DropResult result_;
};

/// Runs jobs 0..n-1 on up to `workers` threads; the first exception (by job
/// index) is rethrown after all threads finish.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn)
{
    std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers) : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    std::vector<std::exception_ptr> errors(n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < threads; ++k)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::optional<double> ratio(double num, double den)
{
    if (!(den > 0.0) || !std::isfinite(num)) return std::nullopt;
    return num / den;
}

void add_gains(RunReport& r, const ModeSummary& m, const ModeSummary& base, bool bursty)
{
    for (Direction dir : {Direction::Downlink, Direction::Uplink}) {
        const bool dl = dir == Direction::Downlink;
        const auto& a = bursty ? (dl ? m.dl_perceived_bps : m.ul_perceived_bps) : (dl ? m.dl_tput_bps : m.ul_tput_bps);
        const auto& b = bursty ? (dl ? base.dl_perceived_bps : base.ul_perceived_bps) : (dl ? base.dl_tput_bps : base.ul_tput_bps);
        const auto row = [&](const char* name, std::optional<double> g) { r.gains.push_back({m.mode, dir, name, g}); };
        if (a.empty() || b.empty()) {
            for (const char* n : {"mean", "p5", "p50", "p95"}) row(n, std::nullopt);
            continue;
        }
        row("mean", ratio(mean_of(a), mean_of(b)));
        row("p5", ratio(percentile(a, 5.0), percentile(b, 5.0)));
        row("p50", ratio(percentile(a, 50.0), percentile(b, 50.0)));
        row("p95", ratio(percentile(a, 95.0), percentile(b, 95.0)));
    }
}

}  // namespace

DropResult run_drop(const RunConfig& cfg, const DropSetup& setup, DuplexMode mode)
{
    return DropRunner(cfg, setup, mode).run();
}

const ModeSummary* RunReport::find(DuplexMode m) const
{
    for (const auto& s : modes)
        if (s.mode == m) return &s;
    return nullptr;
}

std::optional<double> RunReport::gain(DuplexMode m, Direction d, const std::string& metric) const
{
    for (const auto& g : gains)
        if (g.mode == m && g.direction == d && g.metric == metric) return g.gain;
    return std::nullopt;
}

RunReport compare_modes(const RunConfig& cfg)
{
    cfg.validate();
    RunReport report;
    report.traffic = cfg.traffic.kind;
    report.dl_load_bps = cfg.traffic.ftp.dl_offered_load_bps;
    report.ul_load_bps = cfg.traffic.ftp.ul_offered_load_bps;

    std::vector<DropSetup> setups(static_cast<std::size_t>(cfg.drops));
    parallel_for(setups.size(), cfg.workers, [&](std::size_t i) { setups[i] = prepare_drop(cfg, static_cast<int>(i)); });

    const std::size_t nm = cfg.modes.size();
    std::vector<DropResult> results(setups.size() * nm);
    parallel_for(results.size(), cfg.workers, [&](std::size_t j) {
        results[j] = run_drop(cfg, setups[j / nm], cfg.modes[j % nm]);
    });

    for (std::size_t k = 0; k < nm; ++k) {
        ModeSummary s;
        s.mode = cfg.modes[k];
        s.scheduler = scheduler_for(s.mode, cfg.fd_scheduler);
        for (std::size_t d = 0; d < setups.size(); ++d) {
            const DropResult& r = results[d * nm + k];
            s.dl_tput_bps.insert(s.dl_tput_bps.end(), r.dl_tput_bps.begin(), r.dl_tput_bps.end());
            s.ul_tput_bps.insert(s.ul_tput_bps.end(), r.ul_tput_bps.begin(), r.ul_tput_bps.end());
            s.dl_perceived_bps.insert(s.dl_perceived_bps.end(), r.dl_perceived.per_ue_mean_bps.begin(),
                                      r.dl_perceived.per_ue_mean_bps.end());
            s.ul_perceived_bps.insert(s.ul_perceived_bps.end(), r.ul_perceived.per_ue_mean_bps.begin(),
                                      r.ul_perceived.per_ue_mean_bps.end());
            s.bursts_completed += r.dl_perceived.per_burst_bps.size() + r.ul_perceived.per_burst_bps.size();
            s.bursts_unfinished += r.dl_perceived.unfinished + r.ul_perceived.unfinished;
            s.boost_db.push_back(r.boost_db);
            if (s.mode == DuplexMode::FullDuplex && cfg.boost.automatic) s.boost_selection.push_back(r.boost);
            s.mean_dl_sinr_db.push_back(r.mean_dl_sinr_db);
            s.mean_ul_sinr_db.push_back(r.mean_ul_sinr_db);
            s.acks += r.acks;
            s.nacks += r.nacks;
            s.harq_failures += r.harq_failures;
            for (const auto& w : r.warnings) {
                const std::string tagged = std::string(to_string(s.mode)) + " drop " + std::to_string(d) + ": " + w;
                report.warnings.push_back(tagged);
            }
        }
        report.modes.push_back(std::move(s));
    }

    const bool bursty = cfg.traffic.kind == TrafficKind::Ftp3;
    if (const ModeSummary* base = report.find(DuplexMode::Fdd)) {
        for (const auto& m : report.modes) add_gains(report, m, *base, bursty);
        for (const auto& g : report.gains)
            if (!g.gain && g.mode != DuplexMode::Fdd)
                report.warnings.push_back("gain undefined for " + std::string(to_string(g.mode)) + " " +
                                          std::string(to_string(g.direction)) + " " + g.metric);
    } else {
        report.warnings.push_back("no fdd baseline among the modes; gains not computed");
    }

    OverheadModel oh;
    oh.n_ul = cfg.layout.ul_ues_per_bs;
    oh.n_dl = cfg.layout.dl_ues_per_bs;
    oh.pair_bits = cfg.feedback.pair_mode.effective_bits();
    oh.pair_period_tti = cfg.feedback.pair_update_period_tti;
    oh.total_rb = cfg.grid.total_rb;
    report.pair_feedback_overhead = oh.fraction();
    return report;
}

SweepReport load_sweep(const RunConfig& cfg)
{
    if (cfg.traffic.sweep_dl_loads_bps.empty()) throw ConfigError("traffic.sweep_dl_loads_bps: no load points for a sweep");
    SweepReport out;
    for (double load : cfg.traffic.sweep_dl_loads_bps) {
        RunConfig c = cfg;
        c.traffic.kind = TrafficKind::Ftp3;
        c.traffic.ftp.dl_offered_load_bps = load;
        c.traffic.ftp.ul_offered_load_bps = load / cfg.traffic.dl_ul_ratio;
        out.points.push_back(compare_modes(c));
    }
    return out;
}

Fig1Report fig1(const RunConfig& cfg)
{
    RunConfig c = cfg;
    c.nulling = NullingConfig{0.0, 0.0};
    const DropSetup setup = prepare_drop(c, 0);
    PowerConfig p = cfg.power;
    p.boost_db = 0.0;
    InterferencePowers powers;
    powers.bs_dbm_per_rb = p.bs_dbm_per_rb();
    powers.ue_dbm_per_rb.assign(setup.layout.ues.size(), kFloorDbm);
    for (NodeId u : setup.layout.ul_ues) powers.ue_dbm_per_rb[u] = olpc_power(setup.layout, setup.gains, u, p);
    Fig1Report r;
    r.ratios = interference_ratio_cdfs(setup.layout, setup.gains, powers);
    if (setup.gains.clamped_links > 0)
        r.warnings.push_back("propagation: " + std::to_string(setup.gains.clamped_links) + " links clamped to the minimum distance");
    return r;
}

}  // namespace fdsim
