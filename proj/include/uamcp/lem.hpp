#pragma once

#include "uamcp/kinematics.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace uamcp {

/// How a LEM learned about an object. Stored as a bit set per entry.
enum class Source : std::uint8_t {
    Sensor = 1 << 0,
    Ca = 1 << 1,
    CpEgo = 1 << 2, // sender of a CPM
    Cp = 1 << 3,    // object listed in a CPM
    Backend = 1 << 4,
};

struct LemEntry {
    StationId object_id = 0;
    Kinematics kinematics;
    SimTime last_seen;
    std::uint8_t sources = 0;
    std::optional<SimTime> own_sensed_last;

    [[nodiscard]] bool has_source(Source s) const { return (sources & static_cast<std::uint8_t>(s)) != 0; }
};

/// Notified after every accepted upsert (used for detection delays and the
/// event log).
class UpsertListener {
public:
    virtual ~UpsertListener() = default;
    virtual void on_upsert(StationId owner, StationId object_id, SimTime now) = 0;
};

inline constexpr StationId kNoOwner = std::numeric_limits<StationId>::max();
inline constexpr Duration kDefaultLemTtl = microseconds(1'100'000);

/// Local Environment Model: a TTL cache of perceived objects keyed by
/// ground-truth station id. An entry survives while now - last_seen <= ttl.
///
/// Storage is a dense table indexed by id; ids are small integers in every
/// scenario, and iteration order (ascending id) is deterministic.
class Lem {
public:
    explicit Lem(StationId owner = kNoOwner, Duration ttl = kDefaultLemTtl) : owner_(owner), ttl_(ttl) {}

    [[nodiscard]] StationId owner() const { return owner_; }
    void set_listener(UpsertListener* listener) { listener_ = listener; }
    [[nodiscard]] Duration ttl() const { return ttl_; }

    /// Creates or refreshes an entry. last_seen always becomes `now`; the
    /// kinematics are replaced only by a measurement at least as recent.
    /// Returns false (and counts) when `id` is the owner.
    bool upsert(StationId id, const Kinematics& kinematics, Source source, SimTime now);

    std::size_t evict_expired(SimTime now);

    /// Non-expired entries in ascending id order. Evicts first.
    std::vector<LemEntry> snapshot(SimTime now);

    /// Entries the owner sensed itself within the ttl. Evicts first.
    std::vector<LemEntry> own_sensed_view(SimTime now);

    [[nodiscard]] const LemEntry* find(StationId id) const;
    [[nodiscard]] bool fresh(const LemEntry& e, SimTime now) const { return now - e.last_seen <= ttl_; }

    /// Non-expired entries with id < limit, without mutating the cache.
    [[nodiscard]] std::size_t count_fresh_below(StationId limit, SimTime now) const;

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] std::uint64_t rejected_self() const { return rejected_self_; }

private:
    StationId owner_;
    Duration ttl_;
    std::vector<std::optional<LemEntry>> slots_;
    std::size_t size_ = 0;
    std::uint64_t rejected_self_ = 0;
    UpsertListener* listener_ = nullptr;
};

} // namespace uamcp
