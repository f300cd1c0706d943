#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>

namespace uamcp {

/// Simulation clock. Time points count integer microseconds since the start
/// of a run, so ordering and window arithmetic never accumulate float error.
struct SimClock {
    using rep = std::int64_t;
    using period = std::micro;
    using duration = std::chrono::duration<rep, period>;
    using time_point = std::chrono::time_point<SimClock>;
    static constexpr bool is_steady = true;
};

using Duration = SimClock::duration;
using SimTime = SimClock::time_point;

constexpr SimTime kSimStart{};

inline Duration seconds(double s)
{
    return Duration{static_cast<std::int64_t>(std::llround(s * 1e6))};
}

constexpr Duration microseconds(std::int64_t us) { return Duration{us}; }

constexpr double to_seconds(Duration d) { return static_cast<double>(d.count()) * 1e-6; }

constexpr double to_seconds(SimTime t) { return to_seconds(t.time_since_epoch()); }

inline SimTime at_seconds(double s) { return kSimStart + seconds(s); }

} // namespace uamcp
