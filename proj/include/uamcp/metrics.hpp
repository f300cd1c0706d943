#pragma once

#include "uamcp/kinematics.hpp"
#include "uamcp/lem.hpp"
#include "uamcp/types.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uamcp {

/// Observer id used for the central backend in EAR and delay tables.
inline constexpr StationId kBackendObserver = kNoOwner;

struct EarSample {
    SimTime time;
    StationId observer = 0;
    std::size_t known_uas = 0;
    std::size_t active_uas = 0;
    std::optional<double> ear; // missing when no other UAS is active
};

struct CbrSample {
    SimTime time;
    StationId node = 0;
    double cbr = 0.0;
};

struct DelayRecord {
    StationId observer = 0;
    StationId target = 0;
    SimTime reference;                 // later of the two spawns
    std::optional<SimTime> first_known;
    [[nodiscard]] std::optional<double> delay() const
    {
        if (!first_known)
            return std::nullopt;
        return to_seconds(*first_known - reference);
    }
};

enum class Direction : std::uint8_t { Tx, Rx, Drop };

struct MessageCount {
    std::uint64_t tx = 0;
    std::uint64_t rx = 0;
    std::uint64_t dropped = 0;
};

/// Running min/avg/max.
struct Stat {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::uint64_t count = 0;

    void add(double v)
    {
        min = v < min ? v : min;
        max = v > max ? v : max;
        sum += v;
        ++count;
    }
    void merge(const Stat& o)
    {
        if (o.count == 0)
            return;
        min = o.min < min ? o.min : min;
        max = o.max > max ? o.max : max;
        sum += o.sum;
        count += o.count;
    }
    [[nodiscard]] double avg() const { return count ? sum / static_cast<double>(count) : 0.0; }
    [[nodiscard]] bool empty() const { return count == 0; }
};

/// Message-generation gaps observed per (node, class) while content existed.
struct GenerationGaps {
    Duration min = Duration::max();
    Duration max = Duration::zero();
    std::uint64_t generations = 0;
};

/// Everything a run produces, ready to be written as CSV.
struct RunOutputs {
    std::size_t n_uas = 0;
    std::size_t n_gs = 0;
    std::vector<EarSample> ear;
    std::vector<CbrSample> channel_load;
    std::map<std::pair<StationId, MessageClass>, MessageCount> messages;
    std::map<MessageClass, Stat> payloads; // transmitted payload sizes per class
    std::vector<DelayRecord> delays;
    std::map<std::pair<StationId, MessageClass>, GenerationGaps> generation_gaps;
    std::map<std::string, Stat> summary;

    [[nodiscard]] bool is_ground_station(StationId id) const { return id >= n_uas && id < n_uas + n_gs; }
};

/// Accumulates metrics during a run. Owned by the simulation.
class MetricsRecorder {
public:
    MetricsRecorder(std::size_t n_uas, std::size_t n_gs);

    /// EAR of one observer. `active_others` excludes the observer itself
    /// (the backend excludes nobody).
    const EarSample& sample_ear(StationId observer, const Lem& lem, std::size_t active_others, SimTime now);

    void sample_channel_load(StationId node, double cbr, SimTime now);

    void record_message(StationId node, Direction dir, MessageClass cls, std::size_t bytes);

    void note_generation(StationId node, MessageClass cls, SimTime now);
    /// Content vanished (e.g. an empty backend view): the next gap is not a
    /// rate violation.
    void break_generation_chain(StationId node, MessageClass cls);

    void note_spawn(StationId uas, SimTime t) { spawn_[uas] = t; }
    void note_despawn(StationId uas, SimTime t) { despawn_[uas] = t; }
    /// Observer's cache now holds target; only the first call per pair counts.
    void note_known(StationId observer, StationId target, SimTime t)
    {
        if (target >= n_uas_)
            return;
        auto& slot = first_known_[row(observer) * n_uas_ + target];
        if (!slot)
            slot = t;
    }

    /// Builds delay records for every observer/target pair that co-existed.
    [[nodiscard]] std::vector<DelayRecord> first_detection_delays(SimTime end, bool with_backend) const;

    /// Moves the accumulated tables out and fills the summary.
    RunOutputs finish(SimTime end, bool with_backend);

private:
    [[nodiscard]] std::size_t row(StationId observer) const
    {
        return observer == kBackendObserver ? n_uas_ : observer;
    }

    std::size_t n_uas_;
    std::size_t n_gs_;
    RunOutputs out_;
    std::vector<std::optional<SimTime>> spawn_;
    std::vector<std::optional<SimTime>> despawn_;
    std::vector<std::optional<SimTime>> first_known_; // (n_uas + 1) x n_uas
    std::map<std::pair<StationId, MessageClass>, std::optional<SimTime>> last_generation_;
};

/// Fills RunOutputs::summary from the tables.
void summarize(RunOutputs& out);

/// Writes ear.csv, channel_load.csv, messages.csv, payloads.csv,
/// delays.csv and summary.csv into `dir` (created if needed).
void write_outputs(const RunOutputs& out, const std::filesystem::path& dir);

/// Observer/node label used in CSV files.
std::string node_label(StationId id);

/// Percentile (0..100, nearest-rank) over detected delays; nullopt if none.
std::optional<double> delay_percentile(const std::vector<DelayRecord>& delays, double pct,
                                       std::optional<StationId> observer_filter = std::nullopt);

} // namespace uamcp
