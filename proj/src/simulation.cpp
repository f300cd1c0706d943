#include "uamcp/simulation.hpp"

#include "uamcp/central.hpp"
#include "uamcp/facilities.hpp"
#include "uamcp/grid.hpp"
#include "uamcp/rng.hpp"
#include "uamcp/sensing.hpp"

#include <algorithm>
#include <unordered_map>

namespace uamcp {

namespace {

struct WireMessage {
    bool uplink = true;
    StationId gs = 0;
    std::size_t bytes = 0;
    std::optional<UplinkRecord> up;
    std::vector<PerceivedObject> down;
};

struct OnAir {
    Message msg;
    MessageClass cls;
};

struct UasNode {
    SimTime last_update;
    Lem lem;
    CamGenerator cam;
    CpmGenerator cpm;
    DccState dcc;
    bool spawned = false;
};

class World final : public UpsertListener {
public:
    World(const ScenarioConfig& cfg, const SimulationOptions& opt);

    RunResult run();

    void on_upsert(StationId owner, StationId object_id, SimTime now) override;

private:
    void handle(const Event& e);
    void on_spawn(StationId id);
    void on_tick();
    void on_generation_check(StationId node, MessageClass cls);
    void on_frame_end(FrameId id);
    void on_wired_delivery(std::uint64_t id);
    void on_backend_publish();
    void on_metrics_sample();

    void despawn(StationId id);
    void transmit(StationId sender, Vec2 position, Message msg, MessageClass cls);
    const std::vector<Listener>& listeners();
    Duration phase(Subsystem s, std::uint32_t node) const;
    void log(LogRecord::Kind kind, StationId observer, StationId target)
    {
        if (opt_.record_event_log)
            result_.event_log.push_back(LogRecord{kind, engine_.now(), observer, target});
    }
    [[nodiscard]] SimTime now() const { return engine_.now(); }
    [[nodiscard]] bool central() const { return cfg_.mode == Mode::Central; }

    const ScenarioConfig cfg_;
    const SimulationOptions opt_;
    const std::size_t n_uas_;
    const Duration tick_;
    const Duration check_period_;
    const Duration sample_period_;
    const Duration publish_period_;

    Engine engine_;
    Channel channel_;
    MetricsRecorder recorder_;
    Backend backend_;
    std::vector<PlannedFlight> flights_;
    std::vector<UasState> states_;
    std::vector<UasNode> uas_;
    std::vector<GroundStation> gs_;
    std::vector<std::optional<SimTime>> forced_despawn_;

    std::unordered_map<FrameId, OnAir> on_air_;
    std::unordered_map<std::uint64_t, WireMessage> wired_;
    std::uint64_t next_wire_ = 0;

    std::vector<Listener> listeners_;
    bool listeners_dirty_ = true;
    std::size_t active_ = 0;

    RunResult result_;
};

World::World(const ScenarioConfig& cfg, const SimulationOptions& opt)
    : cfg_(cfg), opt_(opt), n_uas_(cfg.n_uas), tick_(seconds(cfg.mobility_tick)),
      check_period_(seconds(cfg.generation_check_period)), sample_period_(seconds(cfg.metrics_sample_period)),
      publish_period_(seconds(cfg.backend_publish_period)), channel_(cfg.radio, cfg.station_count()),
      recorder_(cfg.n_uas, cfg.gs_count()), backend_(seconds(cfg.lem_ttl))
{
    validate(cfg_);
    const GridNetwork net = GridNetwork::build(cfg_);
    flights_ = generate_routes(net, cfg_, cfg_.seed);

    states_.resize(n_uas_);
    uas_.reserve(n_uas_);
    for (std::size_t i = 0; i < n_uas_; ++i) {
        const auto id = static_cast<StationId>(i);
        states_[i].id = id;
        StationMeta meta;
        meta.public_id = id;
        uas_.push_back(UasNode{kSimStart, Lem(id, seconds(cfg_.lem_ttl)), CamGenerator(meta), CpmGenerator{}, {}, false});
    }
    // Pointers into uas_ are stable from here on.
    for (UasNode& u : uas_)
        u.lem.set_listener(this);

    backend_.set_listener(this);

    if (central()) {
        const auto positions = place_ground_stations(cfg_.gs_grid_dim, cfg_);
        for (std::size_t k = 0; k < positions.size(); ++k) {
            GroundStation g;
            g.id = static_cast<StationId>(n_uas_ + k);
            g.position = positions[k];
            g.uplink = WiredLink(cfg_.wired_capacity, seconds(cfg_.wired_latency));
            g.downlink = WiredLink(cfg_.wired_capacity, seconds(cfg_.wired_latency));
            gs_.push_back(std::move(g));
        }
    }

    forced_despawn_.resize(n_uas_);
    for (const auto& [id, t] : opt_.forced_despawns) {
        if (id < n_uas_)
            forced_despawn_[id] = t;
    }
    if (opt_.record_tx_trace)
        result_.sensed_at.resize(n_uas_ * n_uas_);
}

Duration World::phase(Subsystem s, std::uint32_t node) const
{
    RngStream rng(cfg_.seed, s, node);
    return Duration{static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(check_period_.count())))};
}

RunResult World::run()
{
    for (std::size_t i = 0; i < n_uas_; ++i)
        engine_.schedule(flights_[i].spawn_time, EventKind::Spawn, static_cast<StationId>(i));
    engine_.schedule(kSimStart, EventKind::MobilityTick);
    engine_.schedule(kSimStart, EventKind::MetricsSample);
    if (central()) {
        engine_.schedule(kSimStart, EventKind::BackendPublish);
        for (const GroundStation& g : gs_) {
            engine_.schedule(kSimStart + phase(Subsystem::GroundStationPhase, g.id), EventKind::GenerationCheck, g.id,
                             static_cast<std::uint64_t>(MessageClass::GsCpm));
        }
    }

    const SimTime end = at_seconds(cfg_.duration);
    result_.summary = engine_.run_until(end, [this](const Event& e) { handle(e); });
    result_.config = cfg_;
    result_.outputs = recorder_.finish(end, central());
    result_.channel = channel_.counters();
    return std::move(result_);
}

void World::handle(const Event& e)
{
    switch (e.kind) {
    case EventKind::Spawn: on_spawn(e.subject); break;
    case EventKind::MobilityTick: on_tick(); break;
    case EventKind::GenerationCheck: on_generation_check(e.subject, static_cast<MessageClass>(e.arg)); break;
    case EventKind::FrameEnd: on_frame_end(e.arg); break;
    case EventKind::WiredDelivery: on_wired_delivery(e.arg); break;
    case EventKind::BackendPublish: on_backend_publish(); break;
    case EventKind::MetricsSample: on_metrics_sample(); break;
    default: break;
    }
}

void World::on_upsert(StationId owner, StationId object_id, SimTime t)
{
    recorder_.note_known(owner, object_id, t);
    if (opt_.record_event_log && object_id < n_uas_)
        result_.event_log.push_back(LogRecord{LogRecord::Kind::Upsert, t, owner, object_id});
}

void World::on_spawn(StationId id)
{
    states_[id] = launch(id, flights_[id].route, cfg_.max_speed);
    uas_[id].last_update = now();
    uas_[id].spawned = true;
    ++active_;
    result_.max_active_uas = std::max<std::uint64_t>(result_.max_active_uas, active_);
    recorder_.note_spawn(id, now());
    log(LogRecord::Kind::Spawn, id, id);
    listeners_dirty_ = true;

    if (sends_cam(cfg_.mode))
        engine_.schedule_in(phase(Subsystem::CamPhase, id), EventKind::GenerationCheck, id,
                            static_cast<std::uint64_t>(MessageClass::Cam));
    if (sends_cpm(cfg_.mode))
        engine_.schedule_in(phase(Subsystem::CpmPhase, id), EventKind::GenerationCheck, id,
                            static_cast<std::uint64_t>(MessageClass::Cpm));
}

void World::despawn(StationId id)
{
    states_[id].alive = false;
    --active_;
    recorder_.note_despawn(id, now());
    log(LogRecord::Kind::Despawn, id, id);
    if (!result_.first_despawn)
        result_.first_despawn = now();
    listeners_dirty_ = true;
}

void World::on_tick()
{
    const SimTime t = now();
    for (std::size_t i = 0; i < n_uas_; ++i) {
        UasState& s = states_[i];
        if (!s.alive)
            continue;
        s = advance(std::move(s), to_seconds(t - uas_[i].last_update));
        uas_[i].last_update = t;
        const auto& forced = forced_despawn_[i];
        if (s.alive && forced && *forced <= t)
            s.alive = false;
        if (!s.alive)
            despawn(static_cast<StationId>(i));
    }
    listeners_dirty_ = true;

    for (std::size_t i = 0; i < n_uas_; ++i) {
        const UasState& ego = states_[i];
        if (!ego.alive)
            continue;
        for (const Detection& d : sense(ego, states_, cfg_.sensor, t)) {
            uas_[i].lem.upsert(d.target_id, d.kinematics, Source::Sensor, t);
            if (opt_.record_tx_trace)
                result_.sensed_at[i * n_uas_ + d.target_id].push_back(t);
        }
    }
    engine_.schedule_in(tick_, EventKind::MobilityTick);
}

void World::on_generation_check(StationId node, MessageClass cls)
{
    const SimTime t = now();
    const double cbr = channel_.cbr(node, t);

    if (node >= n_uas_) {
        GroundStation& g = gs_[node - n_uas_];
        if (g.latest.empty()) {
            recorder_.break_generation_chain(node, MessageClass::GsCpm);
        } else if (auto cpm = gs_broadcast_aggregated(g, t, cbr)) {
            recorder_.note_generation(node, MessageClass::GsCpm, t);
            transmit(node, g.position, std::move(*cpm), MessageClass::GsCpm);
        }
        engine_.schedule_in(check_period_, EventKind::GenerationCheck, node, static_cast<std::uint64_t>(cls));
        return;
    }

    const UasState& s = states_[node];
    if (!s.alive)
        return;
    UasNode& u = uas_[node];
    const Kinematics kin = s.kinematics(u.last_update);

    if (cls == MessageClass::Cam) {
        const auto last = u.dcc.last(MessageClass::Cam);
        const Duration elapsed = last ? t - *last : Duration::max();
        if (cam_due(u.cam.last_sent(), kin, elapsed, dcc_interval(cbr), cfg_.triggers)) {
            Cam cam = u.cam.generate(kin, t);
            u.dcc.record(MessageClass::Cam, t);
            recorder_.note_generation(node, MessageClass::Cam, t);
            transmit(node, s.position, std::move(cam), MessageClass::Cam);
        }
    } else if (cls == MessageClass::Cpm) {
        if (u.dcc.permits(MessageClass::Cpm, t, cbr)) {
            const auto own = u.lem.own_sensed_view(t);
            if (auto cpm = u.cpm.generate(node, kin, own, t, cfg_.triggers)) {
                u.dcc.record(MessageClass::Cpm, t);
                recorder_.note_generation(node, MessageClass::Cpm, t);
                transmit(node, s.position, std::move(*cpm), MessageClass::Cpm);
            }
        }
    }
    engine_.schedule_in(check_period_, EventKind::GenerationCheck, node, static_cast<std::uint64_t>(cls));
}

const std::vector<Listener>& World::listeners()
{
    if (listeners_dirty_) {
        listeners_.clear();
        for (const UasState& s : states_) {
            if (s.alive)
                listeners_.push_back(Listener{s.id, s.position});
        }
        for (const GroundStation& g : gs_)
            listeners_.push_back(Listener{g.id, g.position});
        listeners_dirty_ = false;
    }
    return listeners_;
}

void World::transmit(StationId sender, Vec2 position, Message msg, MessageClass cls)
{
    const std::size_t bytes = message_size(msg);
    auto frame = channel_.begin(sender, position, bytes, now(), listeners());
    if (!frame) {
        recorder_.record_message(sender, Direction::Drop, cls, bytes);
        return;
    }
    recorder_.record_message(sender, Direction::Tx, cls, bytes);
    if (opt_.record_tx_trace) {
        TxTrace tr{now(), sender, cls, bytes, {}};
        if (const auto* cpm = std::get_if<Cpm>(&msg)) {
            for (const PerceivedObject& o : cpm->objects)
                tr.objects.push_back(o.object_ref);
        }
        result_.tx_trace.push_back(std::move(tr));
    }
    on_air_.emplace(frame->id, OnAir{std::move(msg), cls});
    engine_.schedule(frame->end(), EventKind::FrameEnd, sender, frame->id);
}

void World::on_frame_end(FrameId id)
{
    const FrameOutcome outcome = channel_.finish(id);
    auto node = on_air_.extract(id);
    const Message& msg = node.mapped().msg;
    const MessageClass cls = node.mapped().cls;
    const SimTime t = now();

    for (StationId r : outcome.delivered) {
        if (r < n_uas_) {
            if (!states_[r].alive)
                continue;
            recorder_.record_message(r, Direction::Rx, cls, outcome.frame.payload_len);
            on_receive(uas_[r].lem, msg, t);
            continue;
        }
        recorder_.record_message(r, Direction::Rx, cls, outcome.frame.payload_len);
        if (cls == MessageClass::GsCpm)
            continue; // ground stations only relay UAS broadcasts
        GroundStation& g = gs_[r - n_uas_];
        UplinkRecord rec{g.id, t, msg};
        const std::size_t bytes = rec.size();
        const SimTime arrival = g.uplink.send(bytes, t);
        recorder_.record_message(g.id, Direction::Tx, MessageClass::Uplink, bytes);
        const std::uint64_t wid = next_wire_++;
        wired_.emplace(wid, WireMessage{true, g.id, bytes, std::move(rec), {}});
        engine_.schedule(arrival, EventKind::WiredDelivery, g.id, wid);
    }
}

void World::on_wired_delivery(std::uint64_t id)
{
    auto node = wired_.extract(id);
    WireMessage& w = node.mapped();
    if (w.uplink) {
        recorder_.record_message(kBackendObserver, Direction::Rx, MessageClass::Uplink, w.bytes);
        backend_.ingest(w.up->inner, now());
        return;
    }
    recorder_.record_message(w.gs, Direction::Rx, MessageClass::Downlink, w.bytes);
    gs_[w.gs - n_uas_].latest = std::move(w.down);
}

void World::on_backend_publish()
{
    const SimTime t = now();
    const auto all = backend_.publication(t);
    for (GroundStation& g : gs_) {
        std::vector<PerceivedObject> content;
        if (cfg_.roi_radius > 0.0) {
            for (const PerceivedObject& o : all) {
                if (distance(o.kinematics.position, g.position) <= cfg_.roi_radius)
                    content.push_back(o);
            }
        } else {
            content = all;
        }
        const std::size_t bytes = Cpm::cpm_size(content.size());
        const SimTime arrival = g.downlink.send(bytes, t);
        recorder_.record_message(kBackendObserver, Direction::Tx, MessageClass::Downlink, bytes);
        const std::uint64_t wid = next_wire_++;
        wired_.emplace(wid, WireMessage{false, g.id, bytes, std::nullopt, std::move(content)});
        engine_.schedule(arrival, EventKind::WiredDelivery, g.id, wid);
    }
    engine_.schedule_in(publish_period_, EventKind::BackendPublish);
}

void World::on_metrics_sample()
{
    const SimTime t = now();
    for (std::size_t i = 0; i < n_uas_; ++i) {
        if (!states_[i].alive)
            continue;
        const auto id = static_cast<StationId>(i);
        recorder_.sample_ear(id, uas_[i].lem, active_ - 1, t);
        log(LogRecord::Kind::EarSample, id, id);
        recorder_.sample_channel_load(id, channel_.cbr(id, t), t);
    }
    if (central()) {
        recorder_.sample_ear(kBackendObserver, backend_.cache(), active_, t);
        log(LogRecord::Kind::EarSample, kBackendObserver, kBackendObserver);
        for (const GroundStation& g : gs_)
            recorder_.sample_channel_load(g.id, channel_.cbr(g.id, t), t);
    }
    engine_.schedule_in(sample_period_, EventKind::MetricsSample);
}

} // namespace

RunResult run_simulation(const ScenarioConfig& cfg, const SimulationOptions& options)
{
    World world(cfg, options);
    return world.run();
}

} // namespace uamcp
