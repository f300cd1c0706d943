#pragma once

#include "uamcp/config.hpp"
#include "uamcp/mobility.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace uamcp {

/// Square lattice of intersections at multiples of the grid spacing, joined
/// by axis-aligned edges of one spacing each.
class GridNetwork {
public:
    static GridNetwork build(const ScenarioConfig& cfg);

    [[nodiscard]] double spacing() const { return spacing_; }
    [[nodiscard]] std::size_t per_axis() const { return per_axis_; }
    [[nodiscard]] const std::vector<Vec2>& intersections() const { return intersections_; }
    [[nodiscard]] std::size_t edge_count() const { return 2 * per_axis_ * (per_axis_ - 1); }

    [[nodiscard]] Vec2 at(std::size_t ix, std::size_t iy) const
    {
        return {static_cast<double>(ix) * spacing_, static_cast<double>(iy) * spacing_};
    }

    /// True if a and b are lattice points one edge apart.
    [[nodiscard]] bool adjacent(Vec2 a, Vec2 b) const;

private:
    double spacing_ = 0.0;
    std::size_t per_axis_ = 0;
    std::vector<Vec2> intersections_;
};

struct PlannedFlight {
    Route route;
    SimTime spawn_time;
};

/// Draws cfg.n_uas flights. Flight i uses its own substream derived from
/// (seed, Routes, i). Origin and destination are drawn uniformly over the
/// intersections and redrawn together until the shortest lattice distance,
/// flown at max_speed, lies in route_duration_range; the path is a uniformly
/// random interleaving of the required x and y steps. Throws after 10^4
/// rejections for one flight.
std::vector<PlannedFlight> generate_routes(const GridNetwork& net, const ScenarioConfig& cfg, std::uint64_t seed);

/// dim x dim ground stations on a uniform lattice spanning the area
/// including its boundary; a single station sits at the centre.
std::vector<Vec2> place_ground_stations(std::size_t dim, const ScenarioConfig& cfg);

} // namespace uamcp
