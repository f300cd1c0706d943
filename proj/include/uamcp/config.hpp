#pragma once

#include "uamcp/facilities.hpp"
#include "uamcp/radio.hpp"
#include "uamcp/sensing.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uamcp {

/// Coordination model under test.
enum class Mode : std::uint8_t { Local, Ca, Cp, CaCp, Central };

inline constexpr std::array kAllModes{Mode::Local, Mode::Ca, Mode::Cp, Mode::CaCp, Mode::Central};

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

constexpr bool sends_cam(Mode m) { return m == Mode::Ca || m == Mode::CaCp || m == Mode::Central; }
constexpr bool sends_cpm(Mode m) { return m == Mode::Cp || m == Mode::CaCp || m == Mode::Central; }

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    double area_side = 4000.0;    // m
    double grid_spacing = 500.0;  // m
    std::size_t n_uas = 200;
    double spawn_window = 20.0;   // s
    double max_speed = 70.0;      // m/s
    double duration = 100.0;      // s
    Mode mode = Mode::Central;
    std::size_t gs_grid_dim = 9;  // per axis; 0 unless mode is central
    SensorSpec sensor;
    RadioParams radio;
    std::uint64_t seed = 1;
    std::array<double, 2> route_duration_range{70.0, 95.0}; // s at max_speed
    double lem_ttl = 1.1;                // s
    double metrics_sample_period = 0.1;  // s

    // Extensions beyond the core scenario description.
    double mobility_tick = 0.1;          // s; sensing runs on the same tick
    double generation_check_period = 0.1; // s; facilities trigger checks
    double backend_publish_period = 0.1; // s
    double wired_latency = 1e-3;         // s
    double wired_capacity = 1e11;        // bit/s
    double roi_radius = 0.0;             // m; 0 disables the backend region-of-interest filter
    TriggerThresholds triggers;

    [[nodiscard]] std::size_t gs_count() const { return gs_grid_dim * gs_grid_dim; }
    [[nodiscard]] std::size_t station_count() const { return n_uas + gs_count(); }
};

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

/// Parses a JSON document. Absent fields take defaults; unknown fields are
/// rejected. When gs_grid_dim is absent it defaults to one GS per grid
/// intersection in central mode and 0 otherwise.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ScenarioConfig& cfg);

/// Base documents for --preset: "paper" (empty, i.e. all defaults) and
/// "small" (50 UAS on a 2 km grid).
nlohmann::json preset_document(std::string_view name);

/// Applies "dotted.key=value" to a document. The value is read as JSON
/// when it parses, otherwise as a string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

} // namespace uamcp
