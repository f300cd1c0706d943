#pragma once

#include "uamcp/lem.hpp"
#include "uamcp/messages.hpp"
#include "uamcp/radio.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace uamcp {

/// One direction of a wired GS<->backend connection. Messages are FIFO:
/// each waits for the previous one to finish serializing.
class WiredLink {
public:
    WiredLink(double capacity_bps = 1e11, Duration latency = microseconds(1000))
        : capacity_(capacity_bps), latency_(latency)
    {
    }

    [[nodiscard]] double serialization_seconds(std::size_t bytes) const
    {
        return 8.0 * static_cast<double>(bytes) / capacity_;
    }

    /// Accepts a message at `now` and returns its arrival time.
    SimTime send(std::size_t bytes, SimTime now);

    [[nodiscard]] Duration latency() const { return latency_; }

private:
    double capacity_;
    Duration latency_;
    SimTime busy_until_ = kSimStart;
    double carry_s_ = 0.0; // sub-microsecond serialization not yet charged
};

/// Central perception service: a TTL cache over every reported sender and
/// object. Duplicate reports (several GS hearing one broadcast) collapse
/// into the same entry.
class Backend {
public:
    explicit Backend(Duration ttl = kDefaultLemTtl) : cache_(kNoOwner, ttl) {}

    void set_listener(UpsertListener* listener) { cache_.set_listener(listener); }

    void ingest(const Message& msg, SimTime now);

    /// Current cache content, optionally restricted to a disk around `center`.
    std::vector<PerceivedObject> publication(SimTime now, std::optional<Vec2> center = std::nullopt,
                                             double radius = 0.0);

    [[nodiscard]] const Lem& cache() const { return cache_; }
    [[nodiscard]] std::uint64_t ingested() const { return ingested_; }

private:
    Lem cache_;
    std::uint64_t ingested_ = 0;
};

/// Gateway between the broadcast channel and the backend.
struct GroundStation {
    StationId id = 0;
    Vec2 position;
    WiredLink uplink;
    WiredLink downlink;
    DccState dcc;
    std::vector<PerceivedObject> latest; // last publication received from the backend
};

/// Builds the aggregated CPM a ground station broadcasts, or nothing when
/// DCC forbids it or there is nothing to share. Records the generation.
std::optional<Cpm> gs_broadcast_aggregated(GroundStation& gs, SimTime now, double cbr);

} // namespace uamcp
