#pragma once

#include <cstdint>
#include <string_view>

namespace uamcp {

/// Station identifier. UAS occupy [0, n_uas); ground stations follow.
using StationId = std::uint32_t;

/// Message classes tracked by DCC and the metrics recorder.
enum class MessageClass : std::uint8_t { Cam, Cpm, GsCpm, Uplink, Downlink };

constexpr std::string_view to_string(MessageClass c)
{
    switch (c) {
    case MessageClass::Cam: return "cam";
    case MessageClass::Cpm: return "cpm";
    case MessageClass::GsCpm: return "gs_cpm";
    case MessageClass::Uplink: return "uplink";
    case MessageClass::Downlink: return "downlink";
    }
    return "?";
}

} // namespace uamcp
