#include "uamcp/event_queue.hpp"
#include "uamcp/rng.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace uamcp;

TEST(Engine, DispatchesInTimeThenInsertionOrder)
{
    Engine eng;
    eng.schedule(at_seconds(2.0), EventKind::Custom, 1);
    eng.schedule(at_seconds(1.0), EventKind::Custom, 2);
    eng.schedule(at_seconds(1.0), EventKind::Custom, 3);
    std::vector<std::uint32_t> seen;
    eng.run_until(at_seconds(10.0), [&](const Event& e) { seen.push_back(e.subject); });
    EXPECT_EQ(seen, (std::vector<std::uint32_t>{2, 3, 1}));
    EXPECT_EQ(eng.now(), at_seconds(10.0));
}

TEST(Engine, RejectsEventsInThePast)
{
    Engine eng;
    eng.run_until(at_seconds(5.0), [](const Event&) {});
    EXPECT_THROW(eng.schedule(at_seconds(4.999999), EventKind::Custom), ContractViolation);
    EXPECT_NO_THROW(eng.schedule(at_seconds(5.0), EventKind::Custom));
}

TEST(Engine, StopsAtHorizonAndKeepsLaterEvents)
{
    Engine eng;
    eng.schedule(at_seconds(1.0), EventKind::Custom);
    eng.schedule(at_seconds(3.0), EventKind::Custom);
    int n = 0;
    const RunSummary s = eng.run_until(at_seconds(2.0), [&](const Event&) { ++n; });
    EXPECT_EQ(n, 1);
    EXPECT_EQ(s.events_processed, 1u);
    EXPECT_EQ(eng.pending(), 1u);
}

TEST(Engine, EventAtHorizonIsDispatched)
{
    Engine eng;
    eng.schedule(at_seconds(2.0), EventKind::Custom);
    int n = 0;
    eng.run_until(at_seconds(2.0), [&](const Event&) { ++n; });
    EXPECT_EQ(n, 1);
}

TEST(Engine, EmptyQueueAdvancesClock)
{
    Engine eng;
    const RunSummary s = eng.run_until(at_seconds(7.5), [](const Event&) {});
    EXPECT_EQ(s.clock, at_seconds(7.5));
    EXPECT_EQ(s.events_processed, 0u);
}

TEST(EngineProperty, RandomSchedulesDispatchInNonDecreasingOrder)
{
    RngStream rng(42, Subsystem::Test, 0);
    for (int trial = 0; trial < 200; ++trial) {
        Engine eng;
        const int n = 1 + static_cast<int>(rng.below(60));
        for (int i = 0; i < n; ++i)
            eng.schedule(kSimStart + microseconds(static_cast<std::int64_t>(rng.below(50))), EventKind::Custom, i);
        SimTime last = kSimStart;
        std::uint64_t last_seq = 0;
        bool first = true;
        int spawned = 0;
        eng.run_until(at_seconds(1.0), [&](const Event& e) {
            EXPECT_GE(e.time, last);
            if (!first && e.time == last)
                EXPECT_GT(e.seq, last_seq);
            first = false;
            last = e.time;
            last_seq = e.seq;
            // Handlers may schedule at the current time or later.
            if (spawned < 20 && rng.below(3) == 0) {
                ++spawned;
                eng.schedule(e.time + microseconds(static_cast<std::int64_t>(rng.below(5))), EventKind::Custom);
            }
        });
    }
}

TEST(EngineProperty, SameScheduleSameTrace)
{
    auto trace = [] {
        Engine eng;
        RngStream rng(9, Subsystem::Test, 1);
        for (int i = 0; i < 100; ++i)
            eng.schedule(kSimStart + microseconds(static_cast<std::int64_t>(rng.below(20))), EventKind::Custom, i);
        std::vector<std::uint32_t> out;
        eng.run_until(at_seconds(1.0), [&](const Event& e) { out.push_back(e.subject); });
        return out;
    };
    EXPECT_EQ(trace(), trace());
}

TEST(Time, SecondsRoundToMicroseconds)
{
    EXPECT_EQ(seconds(0.1).count(), 100'000);
    EXPECT_EQ(seconds(1.1).count(), 1'100'000);
    EXPECT_DOUBLE_EQ(to_seconds(microseconds(2'500'000)), 2.5);
}
