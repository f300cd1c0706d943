#pragma once

#include <cstdint>
#include <random>

namespace uamcp {

/// Subsystem tags used to derive independent random substreams.
enum class Subsystem : std::uint32_t {
    Routes = 1,
    Spawn = 2,
    CamPhase = 3,
    CpmPhase = 4,
    GroundStationPhase = 5,
    ChannelAccess = 6,
    Test = 0xffff,
};

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Random stream keyed by (master seed, subsystem, node). Uses mt19937_64,
/// whose output sequence is fixed by the standard, and hand-rolled
/// distributions (the std ones are implementation-defined), so draws are
/// reproducible across platforms and standard libraries.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, Subsystem subsystem, std::uint32_t node)
        : engine_(splitmix64(splitmix64(master_seed) ^
                             splitmix64((static_cast<std::uint64_t>(subsystem) << 32) | node)))
    {
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n)
    {
        // Rejection sampling removes modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit)
            v = engine_();
        return v % n;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace uamcp
