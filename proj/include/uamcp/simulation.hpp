#pragma once

#include "uamcp/config.hpp"
#include "uamcp/event_queue.hpp"
#include "uamcp/metrics.hpp"
#include "uamcp/radio.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace uamcp {

/// Raw record of what happened, kept only when requested. Enough to
/// recompute every EAR sample independently of the LEM implementation.
struct LogRecord {
    enum class Kind : std::uint8_t { Spawn, Despawn, Upsert, EarSample };
    Kind kind;
    SimTime time;
    StationId observer = 0; // upsert / sample owner (kBackendObserver for the backend)
    StationId target = 0;   // spawned / despawned / upserted station
};

/// Per-message trace used by tests that check generation rules against
/// ground truth.
struct TxTrace {
    SimTime time;
    StationId sender = 0;
    MessageClass cls = MessageClass::Cam;
    std::size_t bytes = 0;
    std::vector<StationId> objects; // CPM object ids
};

struct SimulationOptions {
    bool record_event_log = false;
    bool record_tx_trace = false;
    /// Scripted despawns: (uas id, time). The UAS leaves the world at the
    /// first mobility tick at or after the time, regardless of its route.
    std::vector<std::pair<StationId, SimTime>> forced_despawns;
};

struct RunResult {
    ScenarioConfig config;
    RunSummary summary;
    RunOutputs outputs;
    ChannelCounters channel;
    std::uint64_t max_active_uas = 0;
    std::optional<SimTime> first_despawn;
    std::vector<LogRecord> event_log;
    std::vector<TxTrace> tx_trace;
    /// Sensing ground truth per UAS: times at which each target was inside
    /// the UAS's sensor cone (only with record_tx_trace).
    std::vector<std::vector<SimTime>> sensed_at; // index uas * n_uas + target
};

/// Runs one scenario to completion. Deterministic in (config, options).
RunResult run_simulation(const ScenarioConfig& cfg, const SimulationOptions& options = {});

} // namespace uamcp
