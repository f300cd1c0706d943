#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace oracle {

double path_loss_db(double d_m, double f_mhz, double exponent)
{
    const double pi = 3.14159265358979323846;
    const double c = 299792458.0;
    const double lambda = c / (f_mhz * 1e6);
    return 20.0 * std::log10(4.0 * pi / lambda) + 10.0 * exponent * std::log10(d_m);
}

double link_range(double tx_dbm, double sens_dbm, double f_mhz, double exponent)
{
    double lo = 1e-3, hi = 1e9;
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (tx_dbm - path_loss_db(mid, f_mhz, exponent) >= sens_dbm)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

bool cam_due(const std::optional<uamcp::Kinematics>& last, const uamcp::Kinematics& cur, double elapsed_s,
             double dcc_min_s)
{
    if (elapsed_s < dcc_min_s)
        return false;
    if (!last)
        return true;
    if (elapsed_s >= 1.0)
        return true;
    double dh = std::fmod(std::fabs(cur.heading - last->heading), 360.0);
    if (dh > 180.0)
        dh = 360.0 - dh;
    const double dx = cur.position.x - last->position.x;
    const double dy = cur.position.y - last->position.y;
    return dh > 4.0 || std::sqrt(dx * dx + dy * dy) > 4.0 || std::fabs(cur.speed - last->speed) > 0.5;
}

std::vector<EarRow> ear_from_log(const std::vector<uamcp::LogRecord>& log, std::size_t n_uas, std::int64_t ttl_us)
{
    using K = uamcp::LogRecord::Kind;
    std::set<uamcp::StationId> alive;
    std::map<uamcp::StationId, std::map<uamcp::StationId, std::int64_t>> last;
    std::vector<EarRow> rows;
    for (const auto& r : log) {
        const std::int64_t t = r.time.time_since_epoch().count();
        switch (r.kind) {
        case K::Spawn: alive.insert(r.target); break;
        case K::Despawn: alive.erase(r.target); break;
        case K::Upsert: last[r.observer][r.target] = t; break;
        case K::EarSample: {
            std::size_t known = 0;
            for (const auto& [target, seen] : last[r.observer]) {
                if (target < n_uas && target != r.observer && t - seen <= ttl_us)
                    ++known;
            }
            std::size_t active = alive.size();
            if (alive.contains(r.observer))
                --active;
            rows.push_back({t, r.observer, known, active});
            break;
        }
        }
    }
    return rows;
}

std::vector<FrameVerdict> resolve_frames(const std::vector<uamcp::Vec2>& nodes, const std::vector<FrameSpec>& frames,
                                         double range_m, double preamble_s, std::size_t overhead, double rate_bps)
{
    const std::size_t n = frames.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frames[a].start_us < frames[b].start_us; });

    std::vector<std::int64_t> end(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double air = preamble_s + 8.0 * static_cast<double>(frames[i].payload + overhead) / rate_bps;
        end[i] = frames[i].start_us + std::llround(air * 1e6);
    }

    std::vector<FrameVerdict> out(n);
    std::map<std::uint32_t, std::int64_t> busy_until;
    for (std::size_t i : order) {
        auto it = busy_until.find(frames[i].sender);
        if (it != busy_until.end() && it->second > frames[i].start_us)
            continue;
        out[i].sent = true;
        busy_until[frames[i].sender] = end[i];
    }

    auto in_range = [&](std::uint32_t a, std::uint32_t b) {
        const double dx = nodes[a].x - nodes[b].x, dy = nodes[a].y - nodes[b].y;
        return dx * dx + dy * dy <= range_m * range_m;
    };
    auto overlap = [&](std::size_t a, std::size_t b) {
        return frames[a].start_us < end[b] && frames[b].start_us < end[a];
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (!out[i].sent)
            continue;
        for (std::uint32_t r = 0; r < nodes.size(); ++r) {
            if (r == frames[i].sender)
                continue;
            if (!in_range(frames[i].sender, r)) {
                ++out[i].out_of_range;
                continue;
            }
            bool lost = false;
            for (std::size_t j = 0; j < n && !lost; ++j) {
                if (j == i || !out[j].sent || !overlap(i, j))
                    continue;
                if (frames[j].sender == r || in_range(frames[j].sender, r))
                    lost = true;
            }
            if (lost)
                ++out[i].collided;
            else
                out[i].delivered.push_back(r);
        }
    }
    return out;
}

} // namespace oracle
