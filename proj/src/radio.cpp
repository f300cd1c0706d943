#include "uamcp/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uamcp {

double path_loss_db(double distance_m, const RadioParams& p)
{
    if (distance_m <= 0.0)
        return 0.0;
    constexpr double reference_m = 1.0;
    const double freq_hz = p.carrier_freq * 1e6;
    const double at_reference = 20.0 * std::log10(4.0 * std::numbers::pi * reference_m * freq_hz / kSpeedOfLight);
    return at_reference + 10.0 * p.path_loss_exponent * std::log10(distance_m / reference_m);
}

double max_range(const RadioParams& p)
{
    const double budget = p.tx_power_dbm - p.sensitivity_dbm;
    const double at_reference = path_loss_db(1.0, p);
    return std::pow(10.0, (budget - at_reference) / (10.0 * p.path_loss_exponent));
}

Duration airtime(std::size_t payload_bytes, const RadioParams& p)
{
    const double bits = 8.0 * static_cast<double>(payload_bytes + p.frame_overhead);
    return seconds(p.preamble_time + bits / p.data_rate);
}

Duration dcc_interval(double cbr)
{
    if (cbr < 0.20)
        return microseconds(100'000);
    if (cbr < 0.30)
        return microseconds(200'000);
    if (cbr < 0.40)
        return microseconds(400'000);
    if (cbr < 0.50)
        return microseconds(500'000);
    return microseconds(1'000'000);
}

void CbrMeter::add_busy(SimTime start, SimTime end)
{
    while (!busy_.empty() && busy_.front().end <= start - window_)
        busy_.pop_front();
    if (!busy_.empty() && start <= busy_.back().end) {
        busy_.back().end = std::max(busy_.back().end, end);
        return;
    }
    busy_.push_back({start, end});
}

double CbrMeter::value(SimTime now) const
{
    const SimTime lo = now - window_;
    Duration covered{0};
    for (auto it = busy_.rbegin(); it != busy_.rend(); ++it) {
        if (it->end <= lo)
            break;
        const SimTime a = std::max(it->start, lo);
        const SimTime b = std::min(it->end, now);
        if (b > a)
            covered += b - a;
    }
    const double v = static_cast<double>(covered.count()) / static_cast<double>(window_.count());
    return std::clamp(v, 0.0, 1.0);
}

bool CbrMeter::busy_at(SimTime now) const
{
    for (auto it = busy_.rbegin(); it != busy_.rend(); ++it) {
        if (it->start <= now && now < it->end)
            return true;
        if (it->end <= now)
            break;
    }
    return false;
}

Channel::Channel(RadioParams params, std::size_t station_count)
    : params_(params), range_(max_range(params)), range_sq_(range_ * range_),
      nodes_(station_count, NodeState{kSimStart, CbrMeter{seconds(params.cbr_window)}, {}})
{
    if (params_.data_rate <= 0.0)
        throw std::invalid_argument("radio.data_rate must be positive");
}

bool Channel::transmitting(StationId node, SimTime now) const { return nodes_.at(node).tx_end > now; }

bool Channel::sensed_busy(StationId node, SimTime now) const { return nodes_.at(node).meter.busy_at(now); }

double Channel::cbr(StationId node, SimTime now) const { return nodes_.at(node).meter.value(now); }

void Channel::corrupt_overlapping(NodeState& node, SimTime now)
{
    std::erase_if(node.incoming, [now](const PendingRx& rx) { return rx.end <= now; });
    for (const PendingRx& rx : node.incoming)
        active_.at(rx.frame).receptions[rx.slot].corrupted = true;
}

std::optional<Frame> Channel::begin(StationId sender, Vec2 tx_position, std::size_t payload_bytes, SimTime now,
                                    std::span<const Listener> listeners)
{
    NodeState& tx = nodes_.at(sender);
    if (tx.tx_end > now) {
        ++counters_.tx_busy_drops;
        return std::nullopt;
    }

    Frame frame{next_id_++, sender, tx_position, payload_bytes, now, airtime(payload_bytes, params_)};
    const SimTime end = frame.end();
    ++counters_.frames_sent;

    // Half-duplex: whatever the sender was receiving is lost. Those frames
    // stay listed so they still collide with later arrivals.
    corrupt_overlapping(tx, now);
    tx.tx_end = end;
    tx.meter.add_busy(now, end);

    ActiveFrame af{frame, {}, 0};
    af.receptions.reserve(32);
    std::size_t out_of_range = 0;
    for (const Listener& l : listeners) {
        if (l.id == sender)
            continue;
        if (distance_sq(tx_position, l.position) > range_sq_) {
            ++out_of_range;
            continue;
        }
        NodeState& rx = nodes_.at(l.id);
        rx.meter.add_busy(now, end);
        std::erase_if(rx.incoming, [now](const PendingRx& p) { return p.end <= now; });
        const bool clash = !rx.incoming.empty();
        if (clash)
            corrupt_overlapping(rx, now);
        const bool corrupted = clash || rx.tx_end > now;
        rx.incoming.push_back({frame.id, af.receptions.size(), end});
        af.receptions.push_back({l.id, corrupted});
    }
    af.out_of_range = out_of_range;
    counters_.out_of_range += out_of_range;
    active_.emplace(frame.id, std::move(af));
    return frame;
}

FrameOutcome Channel::finish(FrameId id)
{
    auto it = active_.find(id);
    if (it == active_.end())
        throw std::logic_error("finish() on unknown frame " + std::to_string(id));
    FrameOutcome out;
    out.frame = it->second.frame;
    for (const Reception& r : it->second.receptions) {
        if (r.corrupted) {
            ++out.collided;
        } else {
            out.delivered.push_back(r.receiver);
        }
    }
    counters_.delivered += out.delivered.size();
    counters_.collided += out.collided;
    out.out_of_range = it->second.out_of_range;
    active_.erase(it);
    return out;
}

} // namespace uamcp
