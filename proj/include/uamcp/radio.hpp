#pragma once

#include "uamcp/geometry.hpp"
#include "uamcp/time.hpp"
#include "uamcp/types.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace uamcp {

struct RadioParams {
    double tx_power_dbm = 23.0103; // 200 mW
    double carrier_freq = 5900.0;  // MHz
    double data_rate = 6e6;        // bit/s
    double sensitivity_dbm = -82.0;
    double path_loss_exponent = 2.0;
    double preamble_time = 40e-6;       // s
    std::size_t frame_overhead = 64;    // bytes
    double cbr_window = 0.1;            // s
};

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Log-distance path loss with a 1 m reference; free space at exponent 2.
/// Distance 0 is treated as co-located (0 dB).
double path_loss_db(double distance_m, const RadioParams& p);

/// Distance at which received power drops to the sensitivity threshold.
double max_range(const RadioParams& p);

/// Preamble plus serialization of payload and MAC/PHY overhead.
Duration airtime(std::size_t payload_bytes, const RadioParams& p);

/// Minimum message-generation interval for a channel busy ratio.
///   cbr < 0.2 -> 100 ms, < 0.3 -> 200 ms, < 0.4 -> 400 ms, < 0.5 -> 500 ms, else 1 s
Duration dcc_interval(double cbr);

inline constexpr Duration kDccMinInterval = microseconds(100'000);
inline constexpr Duration kDccMaxInterval = microseconds(1'000'000);

using FrameId = std::uint64_t;

struct Frame {
    FrameId id = 0;
    StationId sender = 0;
    Vec2 tx_position;
    std::size_t payload_len = 0;
    SimTime start;
    Duration airtime{};

    [[nodiscard]] SimTime end() const { return start + airtime; }
};

/// Busy-time bookkeeping for one node over a trailing window.
class CbrMeter {
public:
    explicit CbrMeter(Duration window = microseconds(100'000)) : window_(window) {}

    /// Intervals must arrive in non-decreasing start order.
    void add_busy(SimTime start, SimTime end);

    /// Fraction of [now - window, now] covered by at least one busy interval.
    [[nodiscard]] double value(SimTime now) const;

    /// True if some recorded interval covers `now`.
    [[nodiscard]] bool busy_at(SimTime now) const;

private:
    struct Interval {
        SimTime start;
        SimTime end;
    };
    std::deque<Interval> busy_;
    Duration window_;
};

/// Per-node record of the last generation time per message class.
class DccState {
public:
    [[nodiscard]] std::optional<SimTime> last(MessageClass c) const { return last_[index(c)]; }
    void record(MessageClass c, SimTime t) { last_[index(c)] = t; }

    /// Elapsed time since the last generation of `c` meets the DCC interval.
    [[nodiscard]] bool permits(MessageClass c, SimTime now, double cbr) const
    {
        const auto& l = last_[index(c)];
        return !l || now - *l >= dcc_interval(cbr);
    }

private:
    static constexpr std::size_t index(MessageClass c) { return static_cast<std::size_t>(c); }
    std::array<std::optional<SimTime>, 5> last_{};
};

/// A node able to hear a frame: UAS alive at frame start, or a ground station.
struct Listener {
    StationId id = 0;
    Vec2 position;
};

struct FrameOutcome {
    Frame frame;
    std::vector<StationId> delivered;
    std::size_t collided = 0;
    std::size_t out_of_range = 0;
};

struct ChannelCounters {
    std::uint64_t frames_sent = 0;
    std::uint64_t tx_busy_drops = 0;
    std::uint64_t delivered = 0;
    std::uint64_t collided = 0;
    std::uint64_t out_of_range = 0;
};

/// Shared broadcast medium with a deterministic disk decode range,
/// half-duplex radios, and no capture: any two frames overlapping at a
/// receiver are both lost there.
class Channel {
public:
    Channel(RadioParams params, std::size_t station_count);

    [[nodiscard]] const RadioParams& params() const { return params_; }
    [[nodiscard]] double range() const { return range_; }

    [[nodiscard]] bool transmitting(StationId node, SimTime now) const;

    /// True if a frame is on air at the node's position (own or heard).
    [[nodiscard]] bool sensed_busy(StationId node, SimTime now) const;

    /// Starts a frame. `listeners` lists every potential receiver; the
    /// sender is skipped if present. Returns nullopt (and counts a tx-busy
    /// drop) when the sender is still transmitting.
    std::optional<Frame> begin(StationId sender, Vec2 tx_position, std::size_t payload_bytes, SimTime now,
                               std::span<const Listener> listeners);

    /// Resolves a frame at its end time.
    FrameOutcome finish(FrameId id);

    [[nodiscard]] double cbr(StationId node, SimTime now) const;

    [[nodiscard]] const ChannelCounters& counters() const { return counters_; }

private:
    struct Reception {
        StationId receiver;
        bool corrupted;
    };
    struct ActiveFrame {
        Frame frame;
        std::vector<Reception> receptions;
        std::size_t out_of_range;
    };
    struct PendingRx {
        FrameId frame;
        std::size_t slot;
        SimTime end;
    };
    struct NodeState {
        SimTime tx_end = kSimStart;
        CbrMeter meter;
        std::vector<PendingRx> incoming;
    };

    void corrupt_overlapping(NodeState& node, SimTime now);

    RadioParams params_;
    double range_;
    double range_sq_;
    std::vector<NodeState> nodes_;
    std::unordered_map<FrameId, ActiveFrame> active_;
    FrameId next_id_ = 1;
    ChannelCounters counters_;
};

} // namespace uamcp
