// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdsim/common.hpp"
#include "fdsim/link.hpp"

namespace fdsim {

enum class TrafficKind { FullBuffer, Ftp3 };

std::string_view to_string(TrafficKind k);
TrafficKind traffic_from_string(std::string_view s);

/// FTP model 3. Offered loads are network-wide and split evenly over the UEs
/// of each direction.
struct FtpConfig {
    double file_size_bits = 0.8e6;
    double dl_offered_load_bps = 24e6;
    double ul_offered_load_bps = 12e6;

    /// Files per second per UE.
    double per_ue_rate(Direction d, std::size_t n_ues) const;
    void validate() const;
};

struct BurstRecord {
    NodeId ue = 0;
    Tti arrival_tti = 0;
    std::int64_t size_bits = 0;
    std::optional<Tti> completion_tti;
};

/// Independent Poisson file arrivals for every UE in ues, over [0, horizon)
/// TTIs. UE u draws from its own stream derived from seed, so the arrivals
/// of one UE do not depend on the others. Sorted by (arrival, ue).
std::vector<BurstRecord> generate_arrivals(double rate_per_s, std::span<const NodeId> ues, std::int64_t file_size_bits,
                                           Tti horizon_tti, std::uint64_t seed);

/// size / ((completion - arrival) * TTI), bits/s.
double perceived_throughput_bps(const BurstRecord& b);

struct PerceivedThroughput {
    std::vector<double> per_burst_bps;        // completed bursts, record order
    std::vector<NodeId> ues;                  // UEs with at least one completed burst
    std::vector<double> per_ue_mean_bps;      // aligned with ues
    std::size_t unfinished = 0;
};

PerceivedThroughput perceived_throughput(std::span<const BurstRecord> records);

/// Per-UE FIFO transmit queues. Bits move from queued to in flight when a
/// transport block is built, and to served when it is acknowledged. Blocks
/// that exhaust their HARQ attempts go back to the head of the queue.
class TrafficQueues {
  public:
    /// Full buffer: every UE in ues is always backlogged.
    static TrafficQueues full_buffer(std::size_t n_ue);
    /// FTP: records become schedulable the TTI after their arrival TTI.
    static TrafficQueues bursty(std::size_t n_ue, std::vector<BurstRecord> records);

    bool is_full_buffer() const { return full_buffer_; }

    /// Admits every burst that arrived before tti.
    void release(Tti tti);

    /// Queued bits (kInfiniteBacklog-like +inf under full buffer).
    double backlog_bits(NodeId ue) const;

    /// Moves up to max_bits from ue's queue into a block; returns its payload.
    std::int64_t take(NodeId ue, std::int64_t max_bits, std::vector<Segment>& segments);

    void ack(const HarqProcess& p, Tti tti);
    void requeue(const HarqProcess& p);

    const std::vector<BurstRecord>& records() const { return records_; }

    std::int64_t arrived_bits() const { return arrived_; }
    std::int64_t served_bits() const { return served_; }
    std::int64_t queued_bits() const { return queued_; }
    std::int64_t in_flight_bits() const { return in_flight_; }
    std::int64_t requeued_bits() const { return requeued_; }

    /// arrived == served + queued + in flight, exactly (bursty only).
    bool conserved() const { return full_buffer_ || arrived_ == served_ + queued_ + in_flight_; }

  private:
    struct BurstState {
        std::int64_t unsent = 0;
        std::int64_t acked = 0;
    };

    bool full_buffer_ = false;
    std::vector<BurstRecord> records_;
    std::vector<BurstState> state_;
    std::vector<std::vector<std::size_t>> active_;  // per UE, admitted and incomplete, arrival order
    std::vector<std::int64_t> ue_queued_;
    std::size_t next_release_ = 0;
    std::int64_t arrived_ = 0;
    std::int64_t served_ = 0;
    std::int64_t queued_ = 0;
    std::int64_t in_flight_ = 0;
    std::int64_t requeued_ = 0;
};

void write_burst_csv(const std::string& path, std::span<const BurstRecord> records);

}  // namespace fdsim
