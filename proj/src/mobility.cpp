#include "uamcp/mobility.hpp"

#include <algorithm>
#include <stdexcept>

namespace uamcp {

namespace {

// Index of the segment containing `progress`; segment i spans waypoints i..i+1.
std::size_t segment_at(const std::vector<Vec2>& wp, double progress, double& offset)
{
    double covered = 0.0;
    for (std::size_t i = 0; i + 1 < wp.size(); ++i) {
        const double len = distance(wp[i], wp[i + 1]);
        if (progress < covered + len || i + 2 == wp.size()) {
            offset = std::clamp(progress - covered, 0.0, len);
            return i;
        }
        covered += len;
    }
    offset = 0.0;
    return 0;
}

} // namespace

Route Route::from_waypoints(std::vector<Vec2> waypoints)
{
    if (waypoints.size() < 2)
        throw std::invalid_argument("route needs at least two waypoints");
    Route r;
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
        r.length += distance(waypoints[i], waypoints[i + 1]);
    r.waypoints = std::move(waypoints);
    return r;
}

Vec2 Route::position_at(double progress) const
{
    double offset = 0.0;
    const std::size_t i = segment_at(waypoints, progress, offset);
    const Vec2 a = waypoints[i];
    const Vec2 b = waypoints[i + 1];
    const double len = distance(a, b);
    if (len <= 0.0)
        return a;
    return a + (b - a) * (offset / len);
}

double Route::heading_at(double progress) const
{
    double offset = 0.0;
    const std::size_t i = segment_at(waypoints, progress, offset);
    return bearing_deg(waypoints[i], waypoints[i + 1]);
}

UasState launch(StationId id, Route route, double speed)
{
    UasState u;
    u.id = id;
    u.speed = speed;
    u.route = std::move(route);
    u.route_progress = 0.0;
    u.position = u.route.position_at(0.0);
    u.heading = u.route.heading_at(0.0);
    u.alive = true;
    return u;
}

UasState advance(UasState u, double dt_s)
{
    if (!u.alive)
        return u;
    u.route_progress += u.speed * dt_s;
    u.acceleration = 0.0;
    if (u.route_progress >= u.route.length) {
        u.route_progress = u.route.length;
        u.position = u.route.waypoints.back();
        u.alive = false;
        return u;
    }
    u.position = u.route.position_at(u.route_progress);
    u.heading = u.route.heading_at(u.route_progress);
    return u;
}

} // namespace uamcp
