#include "uamcp/rng.hpp"
#include "uamcp/sensing.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace uamcp;

namespace {

UasState uas_at(StationId id, Vec2 p, double heading, bool alive = true)
{
    UasState u;
    u.id = id;
    u.position = p;
    u.heading = heading;
    u.speed = 70.0;
    u.alive = alive;
    return u;
}

std::vector<StationId> ids(const std::vector<Detection>& d)
{
    std::vector<StationId> v;
    for (const auto& x : d)
        v.push_back(x.target_id);
    return v;
}

} // namespace

TEST(Sensing, TargetStraightAheadWithinRange)
{
    const std::vector<UasState> world{uas_at(0, {0, 0}, 0), uas_at(1, {0, 999}, 90)};
    const auto d = sense(world[0], world, SensorSpec{}, at_seconds(1.0));
    ASSERT_EQ(ids(d), std::vector<StationId>{1});
    EXPECT_EQ(d[0].kinematics.position, (Vec2{0, 999}));
    EXPECT_EQ(d[0].time, at_seconds(1.0));
}

TEST(Sensing, TargetBeyondRange)
{
    const std::vector<UasState> world{uas_at(0, {0, 0}, 0), uas_at(1, {0, 1001}, 0)};
    EXPECT_TRUE(sense(world[0], world, SensorSpec{}, kSimStart).empty());
}

TEST(Sensing, ConeEdges)
{
    const double r = 500.0;
    auto at_angle = [&](double deg) {
        const double rad = deg * std::numbers::pi / 180.0;
        return Vec2{r * std::sin(rad), r * std::cos(rad)};
    };
    EXPECT_TRUE(in_sensor_cone({0, 0}, 0.0, at_angle(59.9), SensorSpec{}));
    EXPECT_TRUE(in_sensor_cone({0, 0}, 0.0, at_angle(-59.9), SensorSpec{}));
    EXPECT_FALSE(in_sensor_cone({0, 0}, 0.0, at_angle(60.1), SensorSpec{}));
    EXPECT_FALSE(in_sensor_cone({0, 0}, 0.0, at_angle(180.0), SensorSpec{}));
    // Boresight across north.
    EXPECT_TRUE(in_sensor_cone({0, 0}, 350.0, at_angle(20.0), SensorSpec{}));
}

TEST(Sensing, SkipsSelfAndDeadTargets)
{
    const std::vector<UasState> world{uas_at(0, {0, 0}, 0), uas_at(1, {0, 100}, 0, false), uas_at(2, {0, 200}, 0)};
    EXPECT_EQ(ids(sense(world[0], world, SensorSpec{}, kSimStart)), std::vector<StationId>{2});
}

TEST(Sensing, OmnidirectionalUnlimitedSeesEveryone)
{
    const SensorSpec all{std::numeric_limits<double>::infinity(), 360.0};
    RngStream rng(3, Subsystem::Test, 0);
    std::vector<UasState> world;
    for (StationId i = 0; i < 50; ++i)
        world.push_back(uas_at(i, {rng.uniform(-1e5, 1e5), rng.uniform(-1e5, 1e5)}, rng.uniform(0, 360)));
    for (const auto& ego : world)
        EXPECT_EQ(sense(ego, world, all, kSimStart).size(), 49u);
}

TEST(SensingProperty, InvariantUnderRotationAndTranslation)
{
    RngStream rng(8, Subsystem::Test, 0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<UasState> world;
        for (StationId i = 0; i < 20; ++i)
            world.push_back(uas_at(i, {rng.uniform(0, 2000), rng.uniform(0, 2000)}, rng.uniform(0, 360)));
        const double rot = rng.uniform(0, 360);
        const Vec2 shift{rng.uniform(-5000, 5000), rng.uniform(-5000, 5000)};
        const double rad = rot * std::numbers::pi / 180.0;
        std::vector<UasState> moved = world;
        for (auto& u : moved) {
            // Clockwise rotation matches compass headings.
            const Vec2 p = u.position;
            u.position = Vec2{p.x * std::cos(rad) + p.y * std::sin(rad), -p.x * std::sin(rad) + p.y * std::cos(rad)} +
                         shift;
            u.heading = wrap_degrees(u.heading + rot);
        }
        for (std::size_t i = 0; i < world.size(); ++i) {
            const auto a = ids(sense(world[i], world, SensorSpec{}, kSimStart));
            const auto b = ids(sense(moved[i], moved, SensorSpec{}, kSimStart));
            EXPECT_EQ(a, b) << "trial " << trial;
        }
    }
}
