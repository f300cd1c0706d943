#pragma once

#include <cmath>
#include <numbers>

namespace uamcp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Vec2&) const = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }
constexpr double distance_sq(Vec2 a, Vec2 b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return dx * dx + dy * dy;
}

// Headings follow the aviation convention: degrees clockwise from north (+y).

inline double wrap_degrees(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r < 0.0)
        r += 360.0;
    return r >= 360.0 ? 0.0 : r;
}

/// Bearing from `from` to `to` in [0, 360).
inline double bearing_deg(Vec2 from, Vec2 to)
{
    const Vec2 d = to - from;
    return wrap_degrees(std::atan2(d.x, d.y) * 180.0 / std::numbers::pi);
}

/// Smallest absolute difference between two headings, in [0, 180].
inline double heading_delta_deg(double a, double b)
{
    const double d = std::fabs(wrap_degrees(a) - wrap_degrees(b));
    return d > 180.0 ? 360.0 - d : d;
}

/// Unit vector pointing along a heading.
inline Vec2 heading_vector(double deg)
{
    const double rad = deg * std::numbers::pi / 180.0;
    return {std::sin(rad), std::cos(rad)};
}

} // namespace uamcp
