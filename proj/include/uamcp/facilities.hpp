#pragma once

#include "uamcp/lem.hpp"
#include "uamcp/messages.hpp"

#include <optional>
#include <span>
#include <vector>

namespace uamcp {

/// Kinematic change thresholds shared by CAM generation and CPM object
/// inclusion. A change must strictly exceed a threshold to trigger.
struct TriggerThresholds {
    double heading_delta = 4.0;  // degrees
    double position_delta = 4.0; // m
    double speed_delta = 0.5;    // m/s
    Duration max_silence = microseconds(1'000'000);
};

inline constexpr Duration kLowFrequencyInterval = microseconds(500'000);

/// True if any of heading, position or speed moved past its threshold.
bool kinematics_changed(const Kinematics& previous, const Kinematics& current, const TriggerThresholds& th);

/// CAM trigger. `elapsed` is the time since the previous CAM (use
/// Duration::max() when there is none); `dcc_min` gates every trigger.
bool cam_due(const std::optional<Kinematics>& last_sent, const Kinematics& current, Duration elapsed,
             Duration dcc_min, const TriggerThresholds& th);

/// Per-station CAM state: what was last announced and when the metadata
/// (low-frequency) container last went out.
class CamGenerator {
public:
    explicit CamGenerator(StationMeta meta) : meta_(meta) {}

    [[nodiscard]] const std::optional<Kinematics>& last_sent() const { return last_sent_; }

    /// Builds a CAM; the low-frequency container is attached when none was
    /// sent in the preceding 500 ms.
    Cam generate(const Kinematics& current, SimTime now);

private:
    StationMeta meta_;
    std::optional<Kinematics> last_sent_;
    std::optional<SimTime> last_lf_;
};

/// Per-station CPM state: last inclusion of every object and the time of the
/// last CPM.
class CpmGenerator {
public:
    struct Inclusion {
        Kinematics kinematics;
        SimTime time;
    };

    /// Own-sensed objects that are new, changed past the thresholds, or were
    /// last included at least max_silence ago. Records the inclusions.
    std::vector<PerceivedObject> select_objects(std::span<const LemEntry> own_sensed, SimTime now,
                                                const TriggerThresholds& th);

    /// Caller has already checked the DCC gate. Returns nothing when no
    /// object is selected and the last CPM is younger than max_silence;
    /// otherwise a CPM (possibly an empty heartbeat).
    std::optional<Cpm> generate(StationId self, const Kinematics& self_kinematics,
                                std::span<const LemEntry> own_sensed, SimTime now, const TriggerThresholds& th);

    [[nodiscard]] std::optional<SimTime> last_generated() const { return last_generated_; }

private:
    std::vector<std::optional<Inclusion>> included_;
    std::optional<SimTime> last_generated_;
};

/// Receive path: CAM senders, CPM senders and CPM objects go into the LEM,
/// stamped with `now`. Objects redistributed by a ground station are tagged
/// as backend-originated. Entries about the owner itself are dropped by the
/// LEM.
void on_receive(Lem& lem, const Message& msg, SimTime now);

} // namespace uamcp
