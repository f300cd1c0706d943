#include "uamcp/lem.hpp"

#include <algorithm>

namespace uamcp {

bool Lem::upsert(StationId id, const Kinematics& kinematics, Source source, SimTime now)
{
    if (id == owner_) {
        ++rejected_self_;
        return false;
    }
    if (id >= slots_.size())
        slots_.resize(static_cast<std::size_t>(id) + 1);
    auto& slot = slots_[id];
    if (!slot) {
        slot = LemEntry{id, kinematics, now, 0, std::nullopt};
        ++size_;
    } else if (!fresh(*slot, now)) {
        // Expired but not yet evicted: treat as a fresh insertion.
        *slot = LemEntry{id, kinematics, now, 0, std::nullopt};
    } else {
        if (kinematics.timestamp >= slot->kinematics.timestamp)
            slot->kinematics = kinematics;
        slot->last_seen = now;
    }
    slot->sources |= static_cast<std::uint8_t>(source);
    if (source == Source::Sensor)
        slot->own_sensed_last = now;
    if (listener_)
        listener_->on_upsert(owner_, id, now);
    return true;
}

std::size_t Lem::evict_expired(SimTime now)
{
    std::size_t evicted = 0;
    for (auto& slot : slots_) {
        if (slot && !fresh(*slot, now)) {
            slot.reset();
            ++evicted;
        }
    }
    size_ -= evicted;
    return evicted;
}

std::vector<LemEntry> Lem::snapshot(SimTime now)
{
    evict_expired(now);
    std::vector<LemEntry> out;
    out.reserve(size_);
    for (const auto& slot : slots_) {
        if (slot)
            out.push_back(*slot);
    }
    return out;
}

std::vector<LemEntry> Lem::own_sensed_view(SimTime now)
{
    evict_expired(now);
    std::vector<LemEntry> out;
    for (const auto& slot : slots_) {
        if (slot && slot->own_sensed_last && now - *slot->own_sensed_last <= ttl_)
            out.push_back(*slot);
    }
    return out;
}

const LemEntry* Lem::find(StationId id) const
{
    if (id >= slots_.size() || !slots_[id])
        return nullptr;
    return &*slots_[id];
}

std::size_t Lem::count_fresh_below(StationId limit, SimTime now) const
{
    std::size_t n = 0;
    const std::size_t end = std::min<std::size_t>(limit, slots_.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (slots_[i] && fresh(*slots_[i], now))
            ++n;
    }
    return n;
}

} // namespace uamcp
