#pragma once

#include "uamcp/time.hpp"

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace uamcp {

enum class EventKind : std::uint8_t {
    MobilityTick,
    FrameStart,
    FrameEnd,
    GenerationCheck,
    MetricsSample,
    WiredDelivery,
    BackendPublish,
    Spawn,
    Despawn,
    Custom,
};

/// Raised when a caller breaks a scheduling precondition. The run is aborted.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Event {
    SimTime time;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Custom;
    std::uint32_t subject = 0; // node / station the event concerns
    std::uint64_t arg = 0;     // kind-specific handle (frame id, message id, ...)
};

struct RunSummary {
    SimTime clock;
    std::uint64_t events_processed = 0;

    bool operator==(const RunSummary&) const = default;
};

/// Min-queue over (time, seq). seq is assigned on insertion, so events
/// scheduled for the same instant dispatch in insertion order.
class EventQueue {
public:
    std::uint64_t push(SimTime time, EventKind kind, std::uint32_t subject, std::uint64_t arg)
    {
        const std::uint64_t seq = next_seq_++;
        heap_.push(Event{time, seq, kind, subject, arg});
        return seq;
    }

    [[nodiscard]] bool empty() const { return heap_.empty(); }
    [[nodiscard]] std::size_t size() const { return heap_.size(); }
    [[nodiscard]] const Event& top() const { return heap_.top(); }

    Event pop()
    {
        Event e = heap_.top();
        heap_.pop();
        return e;
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const
        {
            if (a.time != b.time)
                return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

/// Single-threaded discrete-event engine. Handlers are supplied to
/// run_until() and may schedule further events through the engine.
class Engine {
public:
    [[nodiscard]] SimTime now() const { return clock_; }

    std::uint64_t schedule(SimTime time, EventKind kind, std::uint32_t subject = 0, std::uint64_t arg = 0)
    {
        if (time < clock_) {
            throw ContractViolation("event in past: t=" + std::to_string(time.time_since_epoch().count()) +
                                    "us < clock=" + std::to_string(clock_.time_since_epoch().count()) + "us");
        }
        return queue_.push(time, kind, subject, arg);
    }

    std::uint64_t schedule_in(Duration delay, EventKind kind, std::uint32_t subject = 0, std::uint64_t arg = 0)
    {
        return schedule(clock_ + delay, kind, subject, arg);
    }

    [[nodiscard]] std::size_t pending() const { return queue_.size(); }

    /// Dispatches every event with time <= end, then parks the clock at end.
    template <typename Handler>
    RunSummary run_until(SimTime end, Handler&& handler)
    {
        while (!queue_.empty() && queue_.top().time <= end) {
            Event e = queue_.pop();
            clock_ = e.time;
            ++processed_;
            handler(e);
        }
        if (end > clock_)
            clock_ = end;
        return RunSummary{clock_, processed_};
    }

private:
    EventQueue queue_;
    SimTime clock_ = kSimStart;
    std::uint64_t processed_ = 0;
};

} // namespace uamcp
