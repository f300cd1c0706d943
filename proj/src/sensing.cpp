#include "uamcp/sensing.hpp"

namespace uamcp {

bool in_sensor_cone(Vec2 ego_position, double ego_heading, Vec2 target, const SensorSpec& spec)
{
    if (distance(ego_position, target) > spec.range)
        return false;
    if (spec.fov >= 360.0)
        return true;
    if (target == ego_position)
        return true;
    return heading_delta_deg(bearing_deg(ego_position, target), ego_heading) <= spec.fov / 2.0;
}

std::vector<Detection> sense(const UasState& ego, std::span<const UasState> world, const SensorSpec& spec,
                             SimTime now)
{
    std::vector<Detection> out;
    for (const UasState& other : world) {
        if (!other.alive || other.id == ego.id)
            continue;
        if (in_sensor_cone(ego.position, ego.heading, other.position, spec))
            out.push_back(Detection{other.id, other.kinematics(now), now});
    }
    return out;
}

} // namespace uamcp
