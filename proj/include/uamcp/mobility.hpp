#pragma once

#include "uamcp/geometry.hpp"
#include "uamcp/kinematics.hpp"
#include "uamcp/time.hpp"

#include <vector>

namespace uamcp {

/// Polyline through adjacent grid intersections.
struct Route {
    std::vector<Vec2> waypoints;
    double length = 0.0;

    /// Position and heading `progress` meters along the route (clamped).
    [[nodiscard]] Vec2 position_at(double progress) const;
    [[nodiscard]] double heading_at(double progress) const;

    static Route from_waypoints(std::vector<Vec2> waypoints);
};

struct UasState {
    StationId id = 0;
    Vec2 position;
    double speed = 0.0;
    double heading = 0.0;
    double acceleration = 0.0;
    Route route;
    double route_progress = 0.0;
    bool alive = false;

    [[nodiscard]] Kinematics kinematics(SimTime now) const
    {
        return Kinematics{position, 0.0, heading, speed, acceleration, now};
    }
};

/// State of a UAS at the start of its route.
UasState launch(StationId id, Route route, double speed);

/// Moves a UAS `dt_s` seconds along its route at constant speed. Reaching
/// the end of the route clears `alive`; the caller emits the despawn.
UasState advance(UasState u, double dt_s);

} // namespace uamcp
