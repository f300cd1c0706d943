#pragma once

#include "uamcp/geometry.hpp"
#include "uamcp/time.hpp"
#include "uamcp/types.hpp"

namespace uamcp {

/// Kinematic snapshot of a station as sensed or announced.
struct Kinematics {
    Vec2 position;
    double altitude = 0.0; // flights are projected to ground level
    double heading = 0.0;  // degrees, [0, 360)
    double speed = 0.0;    // m/s
    double acceleration = 0.0;
    SimTime timestamp;

    bool operator==(const Kinematics&) const = default;
};

} // namespace uamcp
