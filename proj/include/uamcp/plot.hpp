#pragma once

#include "uamcp/experiments.hpp"
#include "uamcp/metrics.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace uamcp {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct Panel {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
};

/// Panels stacked vertically in one SVG document.
std::string render_svg(std::span<const Panel> panels, double width = 720.0, double panel_height = 320.0);
void write_svg(const std::filesystem::path& file, std::span<const Panel> panels);

/// Mean UAS EAR per sample time (percent); the backend as its own curve.
Series mean_uas_ear(const std::string& name, std::span<const EarSample> samples);
std::optional<Series> backend_ear(const std::string& name, std::span<const EarSample> samples);

/// EAR-vs-time panel with one UAS curve per labelled run.
Panel ear_panel(const std::vector<std::pair<std::string, std::vector<EarSample>>>& runs);

/// EAR, channel load and message panels over the ground-station count.
std::vector<Panel> sweep_panels(std::span<const SweepRow> rows);

std::vector<EarSample> read_ear_csv(const std::filesystem::path& file);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& file);

} // namespace uamcp
