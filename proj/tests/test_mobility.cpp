#include "uamcp/grid.hpp"
#include "uamcp/mobility.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace uamcp;

TEST(Grid, DefaultLatticeHas81IntersectionsAnd144Edges)
{
    const auto net = GridNetwork::build(ScenarioConfig{});
    EXPECT_EQ(net.per_axis(), 9u);
    EXPECT_EQ(net.intersections().size(), 81u);
    EXPECT_EQ(net.edge_count(), 144u);
}

TEST(Grid, Adjacency)
{
    const auto net = GridNetwork::build(ScenarioConfig{});
    EXPECT_TRUE(net.adjacent({0, 0}, {500, 0}));
    EXPECT_TRUE(net.adjacent({500, 500}, {500, 1000}));
    EXPECT_FALSE(net.adjacent({0, 0}, {500, 500}));
    EXPECT_FALSE(net.adjacent({0, 0}, {1000, 0}));
}

TEST(Routes, LengthsTravelTimesAndAdjacency)
{
    const ScenarioConfig cfg;
    const auto net = GridNetwork::build(cfg);
    const auto flights = generate_routes(net, cfg, 1);
    ASSERT_EQ(flights.size(), 200u);
    std::set<double> lengths;
    for (const auto& f : flights) {
        const auto& w = f.route.waypoints;
        ASSERT_GE(w.size(), 2u);
        for (std::size_t k = 1; k < w.size(); ++k)
            ASSERT_TRUE(net.adjacent(w[k - 1], w[k]));
        const double t = f.route.length / cfg.max_speed;
        EXPECT_GE(t, 70.0);
        EXPECT_LE(t, 95.0);
        EXPECT_GE(f.spawn_time, kSimStart);
        EXPECT_LE(f.spawn_time, at_seconds(cfg.spawn_window));
        lengths.insert(f.route.length);
    }
    for (double l : lengths) {
        EXPECT_GE(l, 4900.0);
        EXPECT_LE(l, 6650.0);
    }
    EXPECT_EQ(lengths, (std::set<double>{5000, 5500, 6000, 6500}));
}

TEST(Routes, RoutesAreShortestLatticePaths)
{
    const ScenarioConfig cfg;
    const auto flights = generate_routes(GridNetwork::build(cfg), cfg, 3);
    for (const auto& f : flights) {
        const Vec2 a = f.route.waypoints.front(), b = f.route.waypoints.back();
        EXPECT_NEAR(f.route.length, std::fabs(a.x - b.x) + std::fabs(a.y - b.y), 1e-6);
    }
}

TEST(Routes, SameSeedSameRoutesOtherSeedDiffers)
{
    const ScenarioConfig cfg;
    const auto net = GridNetwork::build(cfg);
    const auto a = generate_routes(net, cfg, 5), b = generate_routes(net, cfg, 5), c = generate_routes(net, cfg, 6);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].route.waypoints.size(), b[i].route.waypoints.size());
        for (std::size_t k = 0; k < a[i].route.waypoints.size(); ++k)
            EXPECT_EQ(a[i].route.waypoints[k], b[i].route.waypoints[k]);
        EXPECT_EQ(a[i].spawn_time, b[i].spawn_time);
        differs = differs || a[i].spawn_time != c[i].spawn_time;
    }
    EXPECT_TRUE(differs);
}

TEST(Routes, ZeroSpawnWindowSpawnsEverythingAtStart)
{
    ScenarioConfig cfg;
    cfg.spawn_window = 0.0;
    for (const auto& f : generate_routes(GridNetwork::build(cfg), cfg, 1))
        EXPECT_EQ(f.spawn_time, kSimStart);
}

TEST(Routes, InfeasibleRangeThrows)
{
    ScenarioConfig cfg;
    cfg.route_duration_range = {200.0, 300.0}; // 14 km at 70 m/s, grid diameter is 8 km
    EXPECT_THROW(generate_routes(GridNetwork::build(cfg), cfg, 1), std::runtime_error);
}

TEST(GroundStations, Placement)
{
    const ScenarioConfig cfg;
    EXPECT_TRUE(place_ground_stations(0, cfg).empty());
    const auto one = place_ground_stations(1, cfg);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], (Vec2{2000, 2000}));
    const auto nine = place_ground_stations(9, cfg);
    ASSERT_EQ(nine.size(), 81u);
    EXPECT_EQ(nine.front(), (Vec2{0, 0}));
    EXPECT_EQ(nine[1], (Vec2{500, 0}));
    EXPECT_EQ(nine.back(), (Vec2{4000, 4000}));
    const auto five = place_ground_stations(5, cfg);
    EXPECT_EQ(five[1], (Vec2{1000, 0}));
}

TEST(Mobility, AdvanceFollowsRouteAndTurnsCorners)
{
    const Route r = Route::from_waypoints({{0, 0}, {500, 0}, {500, 500}});
    UasState u = launch(4, r, 70.0);
    EXPECT_TRUE(u.alive);
    EXPECT_NEAR(u.heading, 90.0, 1e-9);
    u = advance(u, 5.0);
    EXPECT_NEAR(u.position.x, 350.0, 1e-9);
    u = advance(u, 5.0);
    EXPECT_NEAR(u.position.x, 500.0, 1e-9);
    EXPECT_NEAR(u.position.y, 200.0, 1e-9);
    EXPECT_NEAR(u.heading, 0.0, 1e-9);
    EXPECT_TRUE(u.alive);
}

TEST(Mobility, ReachingTheEndClearsAlive)
{
    const Route r = Route::from_waypoints({{0, 0}, {500, 0}});
    UasState u = launch(0, r, 70.0);
    u = advance(u, 7.0);
    EXPECT_TRUE(u.alive);
    u = advance(u, 0.2);
    EXPECT_FALSE(u.alive);
    EXPECT_EQ(u.position, (Vec2{500, 0}));
}

TEST(Mobility, RouteNeedsTwoWaypoints)
{
    EXPECT_THROW(Route::from_waypoints({{0, 0}}), std::invalid_argument);
}
