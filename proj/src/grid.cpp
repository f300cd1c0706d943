#include "uamcp/grid.hpp"

#include "uamcp/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uamcp {

GridNetwork GridNetwork::build(const ScenarioConfig& cfg)
{
    GridNetwork net;
    net.spacing_ = cfg.grid_spacing;
    net.per_axis_ = static_cast<std::size_t>(std::llround(cfg.area_side / cfg.grid_spacing)) + 1;
    net.intersections_.reserve(net.per_axis_ * net.per_axis_);
    for (std::size_t iy = 0; iy < net.per_axis_; ++iy) {
        for (std::size_t ix = 0; ix < net.per_axis_; ++ix)
            net.intersections_.push_back(net.at(ix, iy));
    }
    return net;
}

bool GridNetwork::adjacent(Vec2 a, Vec2 b) const
{
    const double dx = std::fabs(a.x - b.x);
    const double dy = std::fabs(a.y - b.y);
    constexpr double eps = 1e-6;
    return (std::fabs(dx - spacing_) < eps && dy < eps) || (std::fabs(dy - spacing_) < eps && dx < eps);
}

namespace {

constexpr int kMaxRejections = 10'000;

} // namespace

std::vector<PlannedFlight> generate_routes(const GridNetwork& net, const ScenarioConfig& cfg, std::uint64_t seed)
{
    const std::size_t n = net.per_axis();
    const double min_len = cfg.route_duration_range[0] * cfg.max_speed;
    const double max_len = cfg.route_duration_range[1] * cfg.max_speed;

    std::vector<PlannedFlight> flights;
    flights.reserve(cfg.n_uas);
    for (std::size_t i = 0; i < cfg.n_uas; ++i) {
        RngStream rng(seed, Subsystem::Routes, static_cast<std::uint32_t>(i));

        std::size_t ox = 0, oy = 0, dx = 0, dy = 0;
        int rejections = 0;
        while (true) {
            ox = rng.below(n);
            oy = rng.below(n);
            dx = rng.below(n);
            dy = rng.below(n);
            const std::size_t steps = (ox > dx ? ox - dx : dx - ox) + (oy > dy ? oy - dy : dy - oy);
            const double len = static_cast<double>(steps) * net.spacing();
            if (len >= min_len && len <= max_len)
                break;
            if (++rejections >= kMaxRejections) {
                throw std::runtime_error("route generation: no route with length in [" + std::to_string(min_len) +
                                         ", " + std::to_string(max_len) + "] m after " +
                                         std::to_string(kMaxRejections) + " draws (flight " + std::to_string(i) +
                                         ")");
            }
        }

        // Every monotone lattice path is a sequence of x- and y-steps; a
        // Fisher-Yates shuffle of that multiset picks one uniformly.
        std::vector<bool> x_step;
        const std::size_t nx = ox > dx ? ox - dx : dx - ox;
        const std::size_t ny = oy > dy ? oy - dy : dy - oy;
        x_step.insert(x_step.end(), nx, true);
        x_step.insert(x_step.end(), ny, false);
        for (std::size_t k = x_step.size(); k > 1; --k) {
            const std::size_t j = rng.below(k);
            const bool tmp = x_step[k - 1];
            x_step[k - 1] = x_step[j];
            x_step[j] = tmp;
        }

        std::vector<Vec2> waypoints;
        waypoints.reserve(x_step.size() + 1);
        std::size_t cx = ox, cy = oy;
        waypoints.push_back(net.at(cx, cy));
        for (bool step_x : x_step) {
            if (step_x)
                cx = dx > cx ? cx + 1 : cx - 1;
            else
                cy = dy > cy ? cy + 1 : cy - 1;
            waypoints.push_back(net.at(cx, cy));
        }

        RngStream spawn_rng(seed, Subsystem::Spawn, static_cast<std::uint32_t>(i));
        const SimTime spawn = at_seconds(spawn_rng.uniform(0.0, cfg.spawn_window));
        flights.push_back(PlannedFlight{Route::from_waypoints(std::move(waypoints)), spawn});
    }
    return flights;
}

std::vector<Vec2> place_ground_stations(std::size_t dim, const ScenarioConfig& cfg)
{
    std::vector<Vec2> out;
    if (dim == 0)
        return out;
    if (dim == 1) {
        out.push_back({cfg.area_side / 2.0, cfg.area_side / 2.0});
        return out;
    }
    const double step = cfg.area_side / static_cast<double>(dim - 1);
    out.reserve(dim * dim);
    for (std::size_t iy = 0; iy < dim; ++iy) {
        for (std::size_t ix = 0; ix < dim; ++ix)
            out.push_back({static_cast<double>(ix) * step, static_cast<double>(iy) * step});
    }
    return out;
}

} // namespace uamcp
