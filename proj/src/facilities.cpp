#include "uamcp/facilities.hpp"

#include <cmath>

namespace uamcp {

bool kinematics_changed(const Kinematics& previous, const Kinematics& current, const TriggerThresholds& th)
{
    return heading_delta_deg(previous.heading, current.heading) > th.heading_delta ||
           distance(previous.position, current.position) > th.position_delta ||
           std::fabs(previous.speed - current.speed) > th.speed_delta;
}

bool cam_due(const std::optional<Kinematics>& last_sent, const Kinematics& current, Duration elapsed,
             Duration dcc_min, const TriggerThresholds& th)
{
    if (elapsed < dcc_min)
        return false;
    if (!last_sent || elapsed >= th.max_silence)
        return true;
    return kinematics_changed(*last_sent, current, th);
}

Cam CamGenerator::generate(const Kinematics& current, SimTime now)
{
    Cam cam;
    cam.sender = meta_.public_id;
    cam.kinematics = current;
    cam.generation_time = now;
    if (!last_lf_ || now - *last_lf_ >= kLowFrequencyInterval) {
        cam.low_frequency = meta_;
        last_lf_ = now;
    }
    last_sent_ = current;
    return cam;
}

std::vector<PerceivedObject> CpmGenerator::select_objects(std::span<const LemEntry> own_sensed, SimTime now,
                                                          const TriggerThresholds& th)
{
    std::vector<PerceivedObject> out;
    for (const LemEntry& e : own_sensed) {
        if (e.object_id >= included_.size())
            included_.resize(static_cast<std::size_t>(e.object_id) + 1);
        auto& rec = included_[e.object_id];
        const bool include = !rec || now - rec->time >= th.max_silence || kinematics_changed(rec->kinematics, e.kinematics, th);
        if (!include)
            continue;
        rec = Inclusion{e.kinematics, now};
        out.push_back(PerceivedObject{e.object_id, e.kinematics, e.kinematics.timestamp});
    }
    return out;
}

std::optional<Cpm> CpmGenerator::generate(StationId self, const Kinematics& self_kinematics,
                                          std::span<const LemEntry> own_sensed, SimTime now,
                                          const TriggerThresholds& th)
{
    auto objects = select_objects(own_sensed, now, th);
    const bool silent_too_long = !last_generated_ || now - *last_generated_ >= th.max_silence;
    if (objects.empty() && !silent_too_long)
        return std::nullopt;
    last_generated_ = now;
    return Cpm{self, StationType::Uas, self_kinematics, std::move(objects), now};
}

void on_receive(Lem& lem, const Message& msg, SimTime now)
{
    if (const auto* cam = std::get_if<Cam>(&msg)) {
        lem.upsert(cam->sender, cam->kinematics, Source::Ca, now);
        return;
    }
    const auto& cpm = std::get<Cpm>(msg);
    const bool from_ground = cpm.sender_type == StationType::GroundStation;
    if (!from_ground)
        lem.upsert(cpm.sender, cpm.sender_kinematics, Source::CpEgo, now);
    const Source object_source = from_ground ? Source::Backend : Source::Cp;
    for (const PerceivedObject& o : cpm.objects)
        lem.upsert(o.object_ref, o.kinematics, object_source, now);
}

} // namespace uamcp
