// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#include "fdsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <tuple>

#include "fdsim/rng.hpp"

namespace fdsim {

std::string_view to_string(TrafficKind k)
{
    return k == TrafficKind::FullBuffer ? "full_buffer" : "ftp3";
}

TrafficKind traffic_from_string(std::string_view s)
{
    if (s == "full_buffer") return TrafficKind::FullBuffer;
    if (s == "ftp3" || s == "bursty") return TrafficKind::Ftp3;
    throw ConfigError("unknown traffic model '" + std::string(s) + "' (expected full_buffer or ftp3)");
}

double FtpConfig::per_ue_rate(Direction d, std::size_t n_ues) const
{
    if (n_ues == 0) return 0.0;
    const double load = d == Direction::Downlink ? dl_offered_load_bps : ul_offered_load_bps;
    return load / (file_size_bits * static_cast<double>(n_ues));
}

void FtpConfig::validate() const
{
    if (!(file_size_bits >= 1.0)) throw ConfigError("traffic.file_size_bits must be >= 1");
    if (!(dl_offered_load_bps >= 0.0) || !(ul_offered_load_bps >= 0.0))
        throw ConfigError("traffic: offered loads must be >= 0");
}

std::vector<BurstRecord> generate_arrivals(double rate_per_s, std::span<const NodeId> ues, std::int64_t file_size_bits,
                                           Tti horizon_tti, std::uint64_t seed)
{
    std::vector<BurstRecord> out;
    if (!(rate_per_s > 0.0) || horizon_tti <= 0) return out;
    const double horizon_s = static_cast<double>(horizon_tti) * kTtiSeconds;
    for (NodeId ue : ues) {
        Stream g(stream_seed(seed, StreamTag::Traffic, ue));
        double t = 0.0;
        while (true) {
            t += exponential(g, rate_per_s);
            if (t >= horizon_s) break;
            const auto tti = static_cast<Tti>(std::floor(t / kTtiSeconds));
            out.push_back({ue, std::min(tti, horizon_tti - 1), file_size_bits, std::nullopt});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const BurstRecord& a, const BurstRecord& b) { return std::tie(a.arrival_tti, a.ue) < std::tie(b.arrival_tti, b.ue); });
    return out;
}

double perceived_throughput_bps(const BurstRecord& b)
{
    FDSIM_EXPECTS(b.completion_tti && *b.completion_tti > b.arrival_tti, "burst not completed after its arrival");
    return static_cast<double>(b.size_bits) / (static_cast<double>(*b.completion_tti - b.arrival_tti) * kTtiSeconds);
}

PerceivedThroughput perceived_throughput(std::span<const BurstRecord> records)
{
    PerceivedThroughput r;
    std::map<NodeId, std::pair<double, std::size_t>> per_ue;
    for (const auto& b : records) {
        if (!b.completion_tti) {
            ++r.unfinished;
            continue;
        }
        const double v = perceived_throughput_bps(b);
        r.per_burst_bps.push_back(v);
        auto& acc = per_ue[b.ue];
        acc.first += v;
        ++acc.second;
    }
    for (const auto& [ue, acc] : per_ue) {
        r.ues.push_back(ue);
        r.per_ue_mean_bps.push_back(acc.first / static_cast<double>(acc.second));
    }
    return r;
}

TrafficQueues TrafficQueues::full_buffer(std::size_t n_ue)
{
    TrafficQueues q;
    q.full_buffer_ = true;
    q.ue_queued_.assign(n_ue, 0);
    return q;
}

TrafficQueues TrafficQueues::bursty(std::size_t n_ue, std::vector<BurstRecord> records)
{
    TrafficQueues q;
    q.records_ = std::move(records);
    FDSIM_EXPECTS(std::is_sorted(q.records_.begin(), q.records_.end(),
                                 [](const BurstRecord& a, const BurstRecord& b) { return a.arrival_tti < b.arrival_tti; }),
                  "burst records must be sorted by arrival");
    q.state_.resize(q.records_.size());
    q.active_.resize(n_ue);
    q.ue_queued_.assign(n_ue, 0);
    for (const auto& b : q.records_) FDSIM_EXPECTS(b.ue < n_ue && b.size_bits > 0, "invalid burst record");
    return q;
}

void TrafficQueues::release(Tti tti)
{
    if (full_buffer_) return;
    while (next_release_ < records_.size() && records_[next_release_].arrival_tti < tti) {
        const std::size_t i = next_release_++;
        const BurstRecord& b = records_[i];
        state_[i].unsent = b.size_bits;
        active_[b.ue].push_back(i);
        ue_queued_[b.ue] += b.size_bits;
        arrived_ += b.size_bits;
        queued_ += b.size_bits;
    }
}

double TrafficQueues::backlog_bits(NodeId ue) const
{
    if (full_buffer_) return std::numeric_limits<double>::infinity();
    return static_cast<double>(ue_queued_[ue]);
}

std::int64_t TrafficQueues::take(NodeId ue, std::int64_t max_bits, std::vector<Segment>& segments)
{
    segments.clear();
    if (full_buffer_) return max_bits;
    std::int64_t taken = 0;
    for (std::size_t i : active_[ue]) {
        if (taken == max_bits) break;
        auto& st = state_[i];
        const std::int64_t n = std::min(st.unsent, max_bits - taken);
        if (n <= 0) continue;
        st.unsent -= n;
        taken += n;
        segments.push_back({i, n});
    }
    ue_queued_[ue] -= taken;
    queued_ -= taken;
    in_flight_ += taken;
    return taken;
}

void TrafficQueues::ack(const HarqProcess& p, Tti tti)
{
    if (full_buffer_) {
        served_ += p.payload_bits;
        return;
    }
    for (const Segment& seg : p.segments) {
        auto& st = state_[seg.burst];
        st.acked += seg.bits;
        BurstRecord& b = records_[seg.burst];
        FDSIM_EXPECTS(st.acked <= b.size_bits, "more bits acknowledged than the burst holds");
        if (st.acked == b.size_bits) {
            b.completion_tti = tti;
            auto& act = active_[b.ue];
            act.erase(std::find(act.begin(), act.end(), seg.burst));
        }
    }
    in_flight_ -= p.payload_bits;
    served_ += p.payload_bits;
}

void TrafficQueues::requeue(const HarqProcess& p)
{
    if (full_buffer_) return;
    for (const Segment& seg : p.segments) {
        state_[seg.burst].unsent += seg.bits;
        ue_queued_[p.ue] += seg.bits;
    }
    in_flight_ -= p.payload_bits;
    queued_ += p.payload_bits;
    requeued_ += p.payload_bits;
}

void write_burst_csv(const std::string& path, std::span<const BurstRecord> records)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "ue,arrival_tti,size_bits,completion_tti\n";
    for (const auto& b : records) {
        out << b.ue << ',' << b.arrival_tti << ',' << b.size_bits << ',';
        if (b.completion_tti) out << *b.completion_tti;
        out << '\n';
    }
}

}  // namespace fdsim
