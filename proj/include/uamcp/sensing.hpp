#pragma once

#include "uamcp/kinematics.hpp"
#include "uamcp/mobility.hpp"

#include <limits>
#include <span>
#include <vector>

namespace uamcp {

/// Front-facing sensor cone; boresight follows the vehicle heading.
struct SensorSpec {
    double range = 1000.0; // m
    double fov = 120.0;    // total aperture, degrees
};

struct Detection {
    StationId target_id = 0;
    Kinematics kinematics;
    SimTime time;
};

/// Perfect (noise- and occlusion-free) detection of every live UAS inside the
/// cone: distance <= range and |bearing - heading| <= fov / 2.
std::vector<Detection> sense(const UasState& ego, std::span<const UasState> world, const SensorSpec& spec,
                             SimTime now);

/// Cone membership test shared by sense() and external checks.
bool in_sensor_cone(Vec2 ego_position, double ego_heading, Vec2 target, const SensorSpec& spec);

} // namespace uamcp
