#include "uamcp/plot.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace uamcp {

namespace {

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#9467bd", "#e6b400", "#ff7f0e",
                                              "#2ca02c", "#d62728", "#17becf", "#7f7f7f"};

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

// Round a span up to 1, 2 or 5 times a power of ten.
double nice_step(double span, int ticks)
{
    if (span <= 0)
        return 1.0;
    const double raw = span / ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag)
            return m * mag;
    }
    return 10.0 * mag;
}

void render_panel(std::string& svg, const Panel& p, double x0, double y0, double w, double h)
{
    const double left = x0 + 60, right = x0 + w - 150, top = y0 + 30, bottom = y0 + h - 40;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = 0.0, ymax = -std::numeric_limits<double>::infinity();
    for (const Series& s : p.series) {
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0;
        xmax = 1;
        ymax = 1;
    }
    if (xmax <= xmin)
        xmax = xmin + 1;
    if (ymax <= ymin)
        ymax = ymin + 1;
    const double ystep = nice_step(ymax - ymin, 5);
    ymax = std::ceil(ymax / ystep) * ystep;
    const double xstep = nice_step(xmax - xmin, 8);

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

    svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="14" text-anchor="middle">{}</text>)"
                       "\n",
                       (left + right) / 2, y0 + 18, escape(p.title));
    svg += fmt::format(R"(<rect x="{:.1f}" y="{:.1f}" width="{:.1f}" height="{:.1f}" fill="none" stroke="#333"/>)"
                       "\n",
                       left, top, right - left, bottom - top);
    for (double y = ymin; y <= ymax + 1e-9; y += ystep) {
        svg += fmt::format(R"(<line x1="{0:.1f}" y1="{1:.1f}" x2="{2:.1f}" y2="{1:.1f}" stroke="#ddd"/>)"
                           R"(<text x="{3:.1f}" y="{4:.1f}" font-size="10" text-anchor="end">{5:g}</text>)"
                           "\n",
                           left, py(y), right, left - 4, py(y) + 3, y);
    }
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9; x += xstep) {
        svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="10" text-anchor="middle">{:g}</text>)"
                           "\n",
                           px(x), bottom + 14, x);
    }
    svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="11" text-anchor="middle">{}</text>)"
                       "\n",
                       (left + right) / 2, bottom + 30, escape(p.xlabel));
    svg += fmt::format(R"(<text x="{0:.1f}" y="{1:.1f}" font-size="11" text-anchor="middle" )"
                       R"svg(transform="rotate(-90 {0:.1f} {1:.1f})">{2}</text>)svg"
                       "\n",
                       x0 + 16, (top + bottom) / 2, escape(p.ylabel));

    for (std::size_t i = 0; i < p.series.size(); ++i) {
        const Series& s = p.series[i];
        const char* color = kPalette[i % kPalette.size()];
        if (!s.points.empty()) {
            std::string pts;
            for (auto [x, y] : s.points)
                pts += fmt::format("{:.1f},{:.1f} ", px(x), py(y));
            svg += fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)"
                               "\n",
                               color, pts);
        }
        const double ly = top + 12 + 16.0 * static_cast<double>(i);
        svg += fmt::format(R"(<line x1="{0:.1f}" y1="{1:.1f}" x2="{2:.1f}" y2="{1:.1f}" stroke="{3}" stroke-width="2"/>)"
                           R"(<text x="{4:.1f}" y="{5:.1f}" font-size="11">{6}</text>)"
                           "\n",
                           right + 10, ly, right + 30, color, right + 35, ly + 4, escape(s.name));
    }
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::ifstream open_csv(const std::filesystem::path& file, std::string_view expected_header)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot read " + file.string());
    std::string header;
    std::getline(in, header);
    if (header != expected_header)
        throw std::runtime_error(file.string() + ": unexpected header '" + header + "'");
    return in;
}

std::optional<double> opt_number(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    return std::stod(s);
}

} // namespace

std::string render_svg(std::span<const Panel> panels, double width, double panel_height)
{
    const double height = panel_height * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    std::string svg = fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0:.0f}" height="{1:.0f}" )"
                                  R"(viewBox="0 0 {0:.0f} {1:.0f}" font-family="sans-serif">)"
                                  "\n"
                                  R"(<rect width="100%" height="100%" fill="white"/>)"
                                  "\n",
                                  width, height);
    for (std::size_t i = 0; i < panels.size(); ++i)
        render_panel(svg, panels[i], 0.0, panel_height * static_cast<double>(i), width, panel_height);
    svg += "</svg>\n";
    return svg;
}

void write_svg(const std::filesystem::path& file, std::span<const Panel> panels)
{
    std::ofstream out(file);
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    out << render_svg(panels);
}

Series mean_uas_ear(const std::string& name, std::span<const EarSample> samples)
{
    std::map<std::int64_t, std::pair<double, int>> acc;
    for (const EarSample& e : samples) {
        if (e.observer == kBackendObserver || !e.ear)
            continue;
        auto& [sum, n] = acc[e.time.time_since_epoch().count()];
        sum += *e.ear;
        ++n;
    }
    Series s{name, {}};
    for (const auto& [t, v] : acc)
        s.points.emplace_back(static_cast<double>(t) * 1e-6, 100.0 * v.first / v.second);
    return s;
}

std::optional<Series> backend_ear(const std::string& name, std::span<const EarSample> samples)
{
    Series s{name, {}};
    for (const EarSample& e : samples) {
        if (e.observer == kBackendObserver && e.ear)
            s.points.emplace_back(to_seconds(e.time), 100.0 * *e.ear);
    }
    if (s.points.empty())
        return std::nullopt;
    return s;
}

Panel ear_panel(const std::vector<std::pair<std::string, std::vector<EarSample>>>& runs)
{
    Panel p{"Environment awareness ratio", "simulation time [s]", "EAR [%]", {}};
    for (const auto& [label, samples] : runs)
        p.series.push_back(mean_uas_ear(label + " (UAS mean)", samples));
    for (const auto& [label, samples] : runs) {
        if (auto b = backend_ear(label + " (backend)", samples))
            p.series.push_back(std::move(*b));
    }
    return p;
}

std::vector<Panel> sweep_panels(std::span<const SweepRow> rows)
{
    Panel ear{"Average EAR", "ground stations", "EAR [%]", {{"UAS", {}}, {"backend", {}}}};
    Panel cbr{"Average channel load", "ground stations", "CBR [%]", {{"UAS", {}}}};
    Panel msg{"Messages sent", "ground stations", "messages", {{"per UAS", {}}, {"per GS", {}}}};
    for (const SweepRow& r : rows) {
        const auto x = static_cast<double>(r.gs_count);
        ear.series[0].points.emplace_back(x, 100.0 * r.ear_uas);
        if (r.ear_backend)
            ear.series[1].points.emplace_back(x, 100.0 * *r.ear_backend);
        cbr.series[0].points.emplace_back(x, 100.0 * r.cbr_uas);
        msg.series[0].points.emplace_back(x, r.messages_per_uas);
        if (r.messages_per_gs)
            msg.series[1].points.emplace_back(x, *r.messages_per_gs);
    }
    return {ear, cbr, msg};
}

std::vector<EarSample> read_ear_csv(const std::filesystem::path& file)
{
    auto in = open_csv(file, "time_s,observer,known,active,ear");
    std::vector<EarSample> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto c = split(line);
        if (c.size() != 5)
            throw std::runtime_error(file.string() + ": malformed row '" + line + "'");
        EarSample e;
        e.time = at_seconds(std::stod(c[0]));
        e.observer = c[1] == "backend" ? kBackendObserver : static_cast<StationId>(std::stoul(c[1]));
        e.known_uas = std::stoul(c[2]);
        e.active_uas = std::stoul(c[3]);
        e.ear = opt_number(c[4]);
        out.push_back(e);
    }
    return out;
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& file)
{
    auto in = open_csv(file, "gs_count,ear_uas,ear_backend,cbr_uas,messages_per_uas,messages_per_gs,messages_total,"
                             "min_gap_s,max_gap_s");
    std::vector<SweepRow> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto c = split(line);
        if (c.size() != 9)
            throw std::runtime_error(file.string() + ": malformed row '" + line + "'");
        SweepRow r;
        r.gs_count = std::stoul(c[0]);
        r.ear_uas = std::stod(c[1]);
        r.ear_backend = opt_number(c[2]);
        r.cbr_uas = std::stod(c[3]);
        r.messages_per_uas = std::stod(c[4]);
        r.messages_per_gs = opt_number(c[5]);
        r.messages_total = std::stod(c[6]);
        r.min_gap_s = std::stod(c[7]);
        r.max_gap_s = std::stod(c[8]);
        out.push_back(r);
    }
    return out;
}

} // namespace uamcp
