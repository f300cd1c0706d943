#pragma once

#include "uamcp/kinematics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace uamcp {

// ---------------------------------------------------------------------------
// Data space. Every item a station may share, grouped by category, with the
// highest sharing frequency found across automotive, aviation and drone
// protocols. Scenarios only emit metadata and kinematics.
// ---------------------------------------------------------------------------

enum class DataCategory : std::uint8_t { Metadata, Kinematic, Mission, Environment, Conflict };

struct DataItem {
    DataCategory category;
    std::string_view name;
    std::string_view frequency_hz; // "every message", "2", "1 to 10", "on request / 2", or "n/a"
};

inline constexpr DataItem kDataSpace[] = {
    {DataCategory::Metadata, "Current time", "every message"},
    {DataCategory::Metadata, "Time delta", "every message"},
    {DataCategory::Metadata, "Type, dimensions", "2"},
    {DataCategory::Metadata, "Special vehicle", "2"},
    {DataCategory::Metadata, "Public ID", "2"},
    {DataCategory::Metadata, "Vehicle status", "2"},
    {DataCategory::Kinematic, "Position", "1 to 10"},
    {DataCategory::Kinematic, "Altitude", "1 to 10"},
    {DataCategory::Kinematic, "Heading, velocity", "1 to 10"},
    {DataCategory::Kinematic, "Acceleration", "1 to 10"},
    {DataCategory::Kinematic, "Remote control", "n/a"},
    {DataCategory::Mission, "Service provider", "2"},
    {DataCategory::Mission, "Public mission ID", "2"},
    {DataCategory::Mission, "Plan", "on request / 2"},
    {DataCategory::Mission, "Mission status", "on request / 2"},
    {DataCategory::Mission, "Changes", "n/a"},
    {DataCategory::Environment, "Objects, vehicles", "1 to 10"},
    {DataCategory::Environment, "Traffic guidance", "1 to 10"},
    {DataCategory::Environment, "Weather, wind", "n/a"},
    {DataCategory::Environment, "Noise", "1 to 10"},
    {DataCategory::Environment, "Stream sensor data", "n/a"},
    {DataCategory::Conflict, "Hazards", "1 to 10"},
    {DataCategory::Conflict, "Collision avoidance", "1 to 10"},
    {DataCategory::Conflict, "Vehicle break down", "1 to 10"},
    {DataCategory::Conflict, "Traffic rule violation", "1 to 10"},
};

enum class StationType : std::uint8_t { Uas, GroundStation };
enum class VehicleStatus : std::uint8_t { Mission, TakeOff, Landing };

struct StationMeta {
    StationId public_id = 0;
    StationType station_type = StationType::Uas;
    double length = 1.0; // m
    double width = 1.0;  // m
    bool special_vehicle = false;
    VehicleStatus status = VehicleStatus::Mission;
};

// Payload sizes in bytes. A CAM is a fixed header+kinematics block with an
// optional low-frequency (metadata) container; a CPM is a base block with
// sender state plus one fixed-size record per perceived object.
inline constexpr std::size_t kCamBaseBytes = 41;
inline constexpr std::size_t kCamLowFrequencyBytes = 62;
inline constexpr std::size_t kCpmBaseBytes = 46;
inline constexpr std::size_t kCpmObjectBytes = 29;

struct Cam {
    StationId sender = 0;
    Kinematics kinematics;
    std::optional<StationMeta> low_frequency; // metadata container, ~2 Hz
    SimTime generation_time;

    [[nodiscard]] bool lf_container_present() const { return low_frequency.has_value(); }
    [[nodiscard]] std::size_t size() const
    {
        return kCamBaseBytes + (lf_container_present() ? kCamLowFrequencyBytes : 0);
    }
};

struct PerceivedObject {
    StationId object_ref = 0;
    Kinematics kinematics;
    SimTime time_of_measurement;
};

struct Cpm {
    StationId sender = 0;
    StationType sender_type = StationType::Uas;
    Kinematics sender_kinematics;
    std::vector<PerceivedObject> objects;
    SimTime generation_time;

    [[nodiscard]] std::size_t size() const { return cpm_size(objects.size()); }
    static constexpr std::size_t cpm_size(std::size_t n_objects)
    {
        return kCpmBaseBytes + kCpmObjectBytes * n_objects;
    }
};

using Message = std::variant<Cam, Cpm>;

inline std::size_t message_size(const Message& m)
{
    return std::visit([](const auto& v) { return v.size(); }, m);
}

inline StationId message_sender(const Message& m)
{
    return std::visit([](const auto& v) { return v.sender; }, m);
}

// ---------------------------------------------------------------------------
// Schema-only containers. They have encodings and sizes so a codec or a
// future scenario can carry them, but no generator emits them.
// ---------------------------------------------------------------------------

struct MissionContainer {
    std::string service_provider;
    std::string public_mission_id;
    std::vector<Vec2> plan;
    enum class Status : std::uint8_t { Planned, Active, Completed, Aborted } status = Status::Planned;

    [[nodiscard]] std::size_t size() const
    {
        return 4 + service_provider.size() + public_mission_id.size() + 8 * plan.size() + 1;
    }
};

struct EnvironmentContainer {
    enum class Kind : std::uint8_t { TrafficGuidance, Weather, Noise, SensorStream } kind = Kind::TrafficGuidance;
    Vec2 position;
    double value = 0.0; // e.g. wind speed or sound pressure level

    [[nodiscard]] std::size_t size() const { return 1 + 8 + 4; }
};

struct ConflictContainer {
    enum class Kind : std::uint8_t { Hazard, CollisionAvoidance, Breakdown, RuleViolation } kind = Kind::Hazard;
    Vec2 position;
    StationId involved = 0;

    [[nodiscard]] std::size_t size() const { return 1 + 8 + 4; }
};

/// Record carried on a ground-station uplink: which GS heard what, and when.
/// Serialization delay is charged on the inner message only.
struct UplinkRecord {
    StationId gs_id = 0;
    SimTime rx_time;
    Message inner;

    [[nodiscard]] std::size_t size() const { return message_size(inner); }
};

} // namespace uamcp
