#include "uamcp/central.hpp"

#include <algorithm>
#include <cmath>

namespace uamcp {

SimTime WiredLink::send(std::size_t bytes, SimTime now)
{
    const SimTime start = std::max(now, busy_until_);
    // Serialization of a CPM at 100 Gbit/s is well below a microsecond;
    // accumulate the fractional part so back-to-back messages still queue.
    carry_s_ += serialization_seconds(bytes);
    const auto whole_us = static_cast<std::int64_t>(std::floor(carry_s_ * 1e6));
    carry_s_ -= static_cast<double>(whole_us) * 1e-6;
    busy_until_ = start + microseconds(whole_us);
    return busy_until_ + latency_;
}

void Backend::ingest(const Message& msg, SimTime now)
{
    ++ingested_;
    if (const auto* cam = std::get_if<Cam>(&msg)) {
        cache_.upsert(cam->sender, cam->kinematics, Source::Ca, now);
        return;
    }
    const auto& cpm = std::get<Cpm>(msg);
    if (cpm.sender_type == StationType::Uas)
        cache_.upsert(cpm.sender, cpm.sender_kinematics, Source::CpEgo, now);
    for (const PerceivedObject& o : cpm.objects)
        cache_.upsert(o.object_ref, o.kinematics, Source::Cp, now);
}

std::vector<PerceivedObject> Backend::publication(SimTime now, std::optional<Vec2> center, double radius)
{
    std::vector<PerceivedObject> out;
    for (const LemEntry& e : cache_.snapshot(now)) {
        if (center && distance(*center, e.kinematics.position) > radius)
            continue;
        out.push_back(PerceivedObject{e.object_id, e.kinematics, e.kinematics.timestamp});
    }
    return out;
}

std::optional<Cpm> gs_broadcast_aggregated(GroundStation& gs, SimTime now, double cbr)
{
    if (gs.latest.empty() || !gs.dcc.permits(MessageClass::GsCpm, now, cbr))
        return std::nullopt;
    gs.dcc.record(MessageClass::GsCpm, now);
    Cpm cpm;
    cpm.sender = gs.id;
    cpm.sender_type = StationType::GroundStation;
    cpm.sender_kinematics = Kinematics{gs.position, 0.0, 0.0, 0.0, 0.0, now};
    cpm.objects = gs.latest;
    cpm.generation_time = now;
    return cpm;
}

} // namespace uamcp
