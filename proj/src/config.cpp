#include "uamcp/config.hpp"

#include <cmath>
#include <cctype>
#include <set>
#include <type_traits>

namespace uamcp {

using nlohmann::json;

std::string_view to_string(Mode m)
{
    switch (m) {
    case Mode::Local: return "local";
    case Mode::Ca: return "ca";
    case Mode::Cp: return "cp";
    case Mode::CaCp: return "ca_cp";
    case Mode::Central: return "central";
    }
    return "?";
}

std::optional<Mode> parse_mode(std::string_view s)
{
    for (Mode m : kAllModes) {
        if (to_string(m) == s)
            return m;
    }
    return std::nullopt;
}

namespace {

/// Reads fields out of one JSON object, remembering which keys were used so
/// leftovers can be reported as unknown.
class FieldReader {
public:
    FieldReader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix))
    {
        if (!obj_.is_object())
            throw ConfigError(name_or_root() + ": expected an object");
    }

    template <typename T>
    void read(const char* key, T& out)
    {
        known_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end())
            return;
        if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
            if (!it->is_number_unsigned() && !(it->is_number_integer() && it->template get<std::int64_t>() >= 0))
                throw ConfigError(path(key) + ": expected a non-negative integer, got " + it->dump());
        }
        try {
            out = it->template get<T>();
        } catch (const json::exception&) {
            throw ConfigError(path(key) + ": wrong type (" + it->dump() + ")");
        }
    }

    [[nodiscard]] bool has(const char* key) const { return obj_.contains(key); }

    const json* child(const char* key)
    {
        known_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void reject_unknown() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!known_.contains(it.key()))
                throw ConfigError("unknown field '" + path(it.key().c_str()) + "'");
        }
    }

    [[nodiscard]] std::string path(const char* key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

private:
    [[nodiscard]] std::string name_or_root() const { return prefix_.empty() ? "config" : prefix_; }

    const json& obj_;
    std::string prefix_;
    std::set<std::string> known_;
};

void require(bool ok, const char* field, const std::string& what)
{
    if (!ok)
        throw ConfigError(std::string(field) + ": " + what);
}

} // namespace

void validate(const ScenarioConfig& c)
{
    require(c.area_side > 0.0, "area_side", "must be positive");
    require(c.grid_spacing > 0.0, "grid_spacing", "must be positive");
    const double cells = c.area_side / c.grid_spacing;
    require(std::fabs(cells - std::round(cells)) < 1e-9 && cells >= 1.0, "grid_spacing",
            "area_side must be divisible by grid_spacing");
    require(c.n_uas > 0, "n_uas", "must be at least 1");
    require(c.spawn_window >= 0.0, "spawn_window", "must be non-negative");
    require(c.duration > 0.0, "duration", "must be positive");
    require(c.spawn_window < c.duration, "spawn_window", "must be shorter than duration");
    require(c.max_speed > 0.0, "max_speed", "must be positive");
    require(c.route_duration_range[0] > 0.0 && c.route_duration_range[0] <= c.route_duration_range[1],
            "route_duration_range", "must be an increasing pair of positive durations");
    if (c.max_speed > 0.0 && c.grid_spacing > 0.0 && cells >= 1.0) {
        // Some whole number of edges must fit the duration range.
        const double lo_edges = std::ceil(c.route_duration_range[0] * c.max_speed / c.grid_spacing - 1e-9);
        const double hi_edges = std::floor(c.route_duration_range[1] * c.max_speed / c.grid_spacing + 1e-9);
        require(lo_edges <= hi_edges && lo_edges <= 2.0 * std::round(cells), "route_duration_range",
                "no lattice route length fits this range on the grid");
    }
    if (c.mode == Mode::Central)
        require(c.gs_grid_dim >= 1, "gs_grid_dim", "central mode requires at least one ground station");
    else
        require(c.gs_grid_dim == 0, "gs_grid_dim", "ground stations are only deployed in central mode");
    require(c.sensor.range > 0.0, "sensor.range", "must be positive");
    require(c.sensor.fov > 0.0 && c.sensor.fov <= 360.0, "sensor.fov", "must be in (0, 360]");
    require(c.radio.data_rate > 0.0, "radio.data_rate", "must be positive");
    require(c.radio.carrier_freq > 0.0, "radio.carrier_freq", "must be positive");
    require(c.radio.path_loss_exponent > 0.0, "radio.path_loss_exponent", "must be positive");
    require(c.radio.preamble_time >= 0.0, "radio.preamble_time", "must be non-negative");
    require(c.radio.cbr_window > 0.0, "radio.cbr_window", "must be positive");
    require(c.lem_ttl > 0.0, "lem_ttl", "must be positive");
    require(c.metrics_sample_period > 0.0, "metrics_sample_period", "must be positive");
    require(c.mobility_tick > 0.0, "mobility_tick", "must be positive");
    require(c.generation_check_period > 0.0, "generation_check_period", "must be positive");
    require(c.backend_publish_period > 0.0, "backend_publish_period", "must be positive");
    require(c.wired_latency >= 0.0, "wired_latency", "must be non-negative");
    require(c.wired_capacity > 0.0, "wired_capacity", "must be positive");
    require(c.roi_radius >= 0.0, "roi_radius", "must be non-negative");
    require(c.triggers.max_silence > Duration::zero(), "triggers.max_silence", "must be positive");
}

ScenarioConfig config_from_json(const json& doc)
{
    const json root = doc.is_null() ? json::object() : doc;
    ScenarioConfig c;
    FieldReader r(root, "");
    r.read("area_side", c.area_side);
    r.read("grid_spacing", c.grid_spacing);
    r.read("n_uas", c.n_uas);
    r.read("spawn_window", c.spawn_window);
    r.read("max_speed", c.max_speed);
    r.read("duration", c.duration);

    std::string mode_name{to_string(c.mode)};
    r.read("mode", mode_name);
    if (auto m = parse_mode(mode_name))
        c.mode = *m;
    else
        throw ConfigError("mode: unknown mode '" + mode_name + "' (expected local, ca, cp, ca_cp or central)");

    if (r.has("gs_grid_dim")) {
        r.read("gs_grid_dim", c.gs_grid_dim);
    } else {
        r.read("gs_grid_dim", c.gs_grid_dim); // mark known
        const double cells = c.grid_spacing > 0.0 ? std::round(c.area_side / c.grid_spacing) : 0.0;
        c.gs_grid_dim = c.mode == Mode::Central ? static_cast<std::size_t>(cells) + 1 : 0;
    }

    r.read("seed", c.seed);
    r.read("route_duration_range", c.route_duration_range);
    r.read("lem_ttl", c.lem_ttl);
    r.read("metrics_sample_period", c.metrics_sample_period);
    r.read("mobility_tick", c.mobility_tick);
    r.read("generation_check_period", c.generation_check_period);
    r.read("backend_publish_period", c.backend_publish_period);
    r.read("wired_latency", c.wired_latency);
    r.read("wired_capacity", c.wired_capacity);
    r.read("roi_radius", c.roi_radius);

    if (const json* s = r.child("sensor")) {
        FieldReader sr(*s, "sensor");
        sr.read("range", c.sensor.range);
        sr.read("fov", c.sensor.fov);
        sr.reject_unknown();
    }
    if (const json* rp = r.child("radio")) {
        FieldReader rr(*rp, "radio");
        rr.read("tx_power_dbm", c.radio.tx_power_dbm);
        rr.read("carrier_freq", c.radio.carrier_freq);
        rr.read("data_rate", c.radio.data_rate);
        rr.read("sensitivity_dbm", c.radio.sensitivity_dbm);
        rr.read("path_loss_exponent", c.radio.path_loss_exponent);
        rr.read("preamble_time", c.radio.preamble_time);
        rr.read("frame_overhead", c.radio.frame_overhead);
        rr.read("cbr_window", c.radio.cbr_window);
        rr.reject_unknown();
    }
    if (const json* t = r.child("triggers")) {
        FieldReader tr(*t, "triggers");
        double silence = to_seconds(c.triggers.max_silence);
        tr.read("heading_delta", c.triggers.heading_delta);
        tr.read("position_delta", c.triggers.position_delta);
        tr.read("speed_delta", c.triggers.speed_delta);
        tr.read("max_silence", silence);
        c.triggers.max_silence = seconds(silence);
        tr.reject_unknown();
    }
    r.reject_unknown();
    validate(c);
    return c;
}

ScenarioConfig load_config(std::string_view text)
{
    json doc = json::object();
    bool blank = true;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            blank = false;
            break;
        }
    }
    if (!blank) {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    return config_from_json(doc);
}

json to_json(const ScenarioConfig& c)
{
    return json{
        {"area_side", c.area_side},
        {"grid_spacing", c.grid_spacing},
        {"n_uas", c.n_uas},
        {"spawn_window", c.spawn_window},
        {"max_speed", c.max_speed},
        {"duration", c.duration},
        {"mode", std::string(to_string(c.mode))},
        {"gs_grid_dim", c.gs_grid_dim},
        {"seed", c.seed},
        {"route_duration_range", c.route_duration_range},
        {"lem_ttl", c.lem_ttl},
        {"metrics_sample_period", c.metrics_sample_period},
        {"mobility_tick", c.mobility_tick},
        {"generation_check_period", c.generation_check_period},
        {"backend_publish_period", c.backend_publish_period},
        {"wired_latency", c.wired_latency},
        {"wired_capacity", c.wired_capacity},
        {"roi_radius", c.roi_radius},
        {"sensor", {{"range", c.sensor.range}, {"fov", c.sensor.fov}}},
        {"radio",
         {{"tx_power_dbm", c.radio.tx_power_dbm},
          {"carrier_freq", c.radio.carrier_freq},
          {"data_rate", c.radio.data_rate},
          {"sensitivity_dbm", c.radio.sensitivity_dbm},
          {"path_loss_exponent", c.radio.path_loss_exponent},
          {"preamble_time", c.radio.preamble_time},
          {"frame_overhead", c.radio.frame_overhead},
          {"cbr_window", c.radio.cbr_window}}},
        {"triggers",
         {{"heading_delta", c.triggers.heading_delta},
          {"position_delta", c.triggers.position_delta},
          {"speed_delta", c.triggers.speed_delta},
          {"max_silence", to_seconds(c.triggers.max_silence)}}},
    };
}

json preset_document(std::string_view name)
{
    if (name.empty() || name == "paper")
        return json::object();
    if (name == "small") {
        // Same traffic density as the paper preset on a quarter of the area.
        // Routes are shortened so they fit a 2 km grid.
        return json{
            {"area_side", 2000.0},
            {"n_uas", 50},
            {"spawn_window", 10.0},
            {"duration", 60.0},
            {"route_duration_range", {35.0, 55.0}},
        };
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected small or paper)");
}

void apply_override(json& doc, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("override '" + std::string(assignment) + "' is not KEY=VALUE");
    const std::string key{assignment.substr(0, eq)};
    const std::string raw{assignment.substr(eq + 1)};

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty())
            throw ConfigError("override key '" + key + "' is malformed");
        if (!node->is_object())
            *node = json::object();
        if (dot == std::string::npos) {
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

} // namespace uamcp
