#include "uamcp/experiments.hpp"
#include "uamcp/simulation.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace uamcp;

namespace {

ScenarioConfig small(Mode mode, std::uint64_t seed = 3, double duration = 20.0)
{
    auto doc = document_for_mode(preset_document("small"), mode);
    doc["seed"] = seed;
    doc["duration"] = duration;
    return config_from_json(doc);
}

} // namespace

TEST(Simulation, SameSeedSameOutputs)
{
    const auto cfg = small(Mode::Central);
    const RunResult a = run_simulation(cfg);
    const RunResult b = run_simulation(cfg);
    EXPECT_EQ(a.summary.events_processed, b.summary.events_processed);
    ASSERT_EQ(a.outputs.ear.size(), b.outputs.ear.size());
    for (std::size_t i = 0; i < a.outputs.ear.size(); ++i) {
        EXPECT_EQ(a.outputs.ear[i].known_uas, b.outputs.ear[i].known_uas);
        EXPECT_EQ(a.outputs.ear[i].time, b.outputs.ear[i].time);
    }
    EXPECT_EQ(a.channel.delivered, b.channel.delivered);
}

TEST(Simulation, DifferentSeedsDiffer)
{
    const RunResult a = run_simulation(small(Mode::CaCp, 1));
    const RunResult b = run_simulation(small(Mode::CaCp, 2));
    EXPECT_NE(a.summary.events_processed, b.summary.events_processed);
}

TEST(Simulation, EarMatchesEventLogReplay)
{
    for (Mode mode : {Mode::Ca, Mode::Central}) {
        const auto cfg = small(mode, 5, 15.0);
        SimulationOptions opt;
        opt.record_event_log = true;
        const RunResult r = run_simulation(cfg, opt);
        const auto rows = oracle::ear_from_log(r.event_log, cfg.n_uas, seconds(cfg.lem_ttl).count());
        ASSERT_EQ(rows.size(), r.outputs.ear.size()) << to_string(mode);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const EarSample& s = r.outputs.ear[i];
            ASSERT_EQ(rows[i].time_us, s.time.time_since_epoch().count());
            ASSERT_EQ(rows[i].observer, s.observer);
            ASSERT_EQ(rows[i].known, s.known_uas) << "sample " << i;
            ASSERT_EQ(rows[i].active, s.active_uas) << "sample " << i;
        }
    }
}

TEST(Simulation, LocalModeSendsNothing)
{
    const RunResult r = run_simulation(small(Mode::Local));
    EXPECT_EQ(r.channel.frames_sent, 0u);
    EXPECT_TRUE(r.outputs.messages.empty());
    for (const CbrSample& c : r.outputs.channel_load)
        EXPECT_EQ(c.cbr, 0.0);
}

TEST(Simulation, ModesSendOnlyTheirClasses)
{
    auto classes = [](const RunResult& r) {
        std::set<MessageClass> out;
        for (const auto& [key, count] : r.outputs.messages) {
            if (count.tx)
                out.insert(key.second);
        }
        return out;
    };
    EXPECT_EQ(classes(run_simulation(small(Mode::Ca))), std::set{MessageClass::Cam});
    EXPECT_EQ(classes(run_simulation(small(Mode::Cp))), std::set{MessageClass::Cpm});
    EXPECT_EQ(classes(run_simulation(small(Mode::Central))),
              (std::set{MessageClass::Cam, MessageClass::Cpm, MessageClass::GsCpm, MessageClass::Uplink,
                        MessageClass::Downlink}));
}

TEST(Simulation, CpmObjectsWereSensedRecently)
{
    const auto cfg = small(Mode::Cp, 7);
    SimulationOptions opt;
    opt.record_tx_trace = true;
    const RunResult r = run_simulation(cfg, opt);
    const Duration ttl = seconds(cfg.lem_ttl);
    std::size_t checked = 0;
    for (const TxTrace& t : r.tx_trace) {
        ASSERT_EQ(t.cls, MessageClass::Cpm);
        EXPECT_EQ(t.bytes, 46 + 29 * t.objects.size());
        for (StationId o : t.objects) {
            const auto& seen = r.sensed_at[t.sender * cfg.n_uas + o];
            const bool recent = std::any_of(seen.begin(), seen.end(), [&](SimTime s) {
                return s <= t.time && t.time - s <= ttl;
            });
            EXPECT_TRUE(recent) << "uas " << t.sender << " reported " << o << " at " << to_seconds(t.time);
            ++checked;
        }
    }
    EXPECT_GT(checked, 100u);
}

TEST(Simulation, CamSizesAndGenerationGaps)
{
    const auto cfg = small(Mode::CaCp, 4, 30.0);
    SimulationOptions opt;
    opt.record_tx_trace = true;
    const RunResult r = run_simulation(cfg, opt);
    for (const TxTrace& t : r.tx_trace) {
        if (t.cls == MessageClass::Cam)
            EXPECT_TRUE(t.bytes == 41 || t.bytes == 103) << t.bytes;
    }
    const Duration check = seconds(cfg.generation_check_period);
    for (const auto& [key, g] : r.outputs.generation_gaps) {
        if (g.generations < 2)
            continue;
        EXPECT_GE(g.min, kDccMinInterval);
        if (key.second == MessageClass::Cam)
            EXPECT_LE(g.max, cfg.triggers.max_silence + check);
        else
            EXPECT_LE(g.max, kDccMaxInterval + check);
    }
}

TEST(Simulation, ZeroGroundStationSweepPointIsCaCp)
{
    auto base = preset_document("small");
    base["duration"] = 15.0;
    const RunResult a = run_simulation(config_from_json(document_for_dim(base, 0)));
    const RunResult b = run_simulation(small(Mode::CaCp, 1, 15.0));
    ASSERT_EQ(a.outputs.ear.size(), b.outputs.ear.size());
    for (std::size_t i = 0; i < a.outputs.ear.size(); ++i)
        EXPECT_EQ(a.outputs.ear[i].known_uas, b.outputs.ear[i].known_uas);
}

TEST(Simulation, OmniscientSensorsGiveFullAwareness)
{
    auto cfg = small(Mode::Local, 2, 20.0);
    cfg.sensor.fov = 360.0;
    cfg.sensor.range = 1e6;
    const RunResult r = run_simulation(cfg);
    std::size_t checked = 0;
    for (const EarSample& s : r.outputs.ear) {
        if (s.ear) {
            EXPECT_DOUBLE_EQ(*s.ear, 1.0);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Simulation, ForcedDespawnLeavesStaleKnowledgeForTtl)
{
    auto cfg = small(Mode::Ca, 9, 20.0);
    SimulationOptions opt;
    opt.forced_despawns = {{0, at_seconds(15.0)}};
    const RunResult r = run_simulation(cfg, opt);
    ASSERT_TRUE(r.first_despawn);
    EXPECT_EQ(*r.first_despawn, at_seconds(15.0));
    for (const EarSample& s : r.outputs.ear) {
        if (s.ear && *s.ear > 1.0)
            EXPECT_LE(s.time - *r.first_despawn, seconds(cfg.lem_ttl));
    }
}

TEST(Simulation, DefaultPresetPopulationCurve)
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto doc = document_for_mode(preset_document("paper"), Mode::Local);
        doc["seed"] = seed;
        const RunResult r = run_simulation(config_from_json(doc));
        EXPECT_EQ(r.max_active_uas, 200u);
        ASSERT_TRUE(r.first_despawn);
        EXPECT_GT(*r.first_despawn, at_seconds(70.0));
    }
}
