// uamcp_sim: command-line front end for the cooperative perception simulator.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 runtime error.

#include "uamcp/config.hpp"
#include "uamcp/experiments.hpp"
#include "uamcp/plot.hpp"
#include "uamcp/simulation.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace uamcp;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string config_path;
    std::string preset = "paper";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string seeds;
    std::string out = "out";
    bool force = false;
    bool plot = false;
    unsigned jobs = 1;
    std::string mode;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_mode)
{
    cmd.add_option("--config", o.config_path, "JSON scenario file");
    cmd.add_option("--preset", o.preset, "Base parameters")->check(CLI::IsMember({"small", "paper"}));
    cmd.add_option("--set", o.overrides, "Override KEY=VALUE (dotted keys for nested fields)")->take_all();
    auto* seed = cmd.add_option("--seed", o.seed, "Master seed");
    cmd.add_option("--seeds", o.seeds, "Seed range A..B")->excludes(seed);
    cmd.add_option("-o,--out", o.out, "Output directory");
    cmd.add_flag("--force", o.force, "Overwrite existing outputs");
    cmd.add_flag("--plot", o.plot, "Also write SVG plots");
    cmd.add_option("--jobs", o.jobs, "Parallel runs")->check(CLI::PositiveNumber);
    if (with_mode)
        cmd.add_option("--mode", o.mode, "local, ca, cp, ca_cp or central");
}

std::vector<std::uint64_t> seed_list(const CommonOptions& o)
{
    if (o.seeds.empty())
        return {};
    const auto dots = o.seeds.find("..");
    try {
        if (dots == std::string::npos)
            return {std::stoull(o.seeds)};
        const auto a = std::stoull(o.seeds.substr(0, dots));
        const auto b = std::stoull(o.seeds.substr(dots + 2));
        if (b < a)
            throw ConfigError("--seeds: empty range " + o.seeds);
        std::vector<std::uint64_t> v;
        for (auto s = a; s <= b; ++s)
            v.push_back(s);
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("--seeds: expected A..B, got '" + o.seeds + "'");
    }
}

nlohmann::json base_document(const CommonOptions& o)
{
    nlohmann::json doc = preset_document(o.preset);
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in)
            throw ConfigError("cannot read config file " + o.config_path);
        const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        nlohmann::json file = nlohmann::json::parse(text, nullptr, false);
        if (file.is_discarded() || !file.is_object())
            throw ConfigError(o.config_path + ": not a JSON object");
        doc.merge_patch(file);
    }
    for (const std::string& s : o.overrides)
        apply_override(doc, s);
    if (!o.mode.empty()) {
        if (!parse_mode(o.mode))
            throw ConfigError("unknown mode '" + o.mode + "'");
        doc["mode"] = o.mode;
    }
    if (o.seed)
        doc["seed"] = *o.seed;
    return doc;
}

/// Seeds to run: --seeds, else --seed, else whatever the document says.
std::vector<std::uint64_t> effective_seeds(const CommonOptions& o, const nlohmann::json& doc)
{
    auto seeds = seed_list(o);
    if (seeds.empty())
        seeds.push_back(config_from_json(doc).seed);
    return seeds;
}

ScenarioConfig with_seed(const nlohmann::json& doc, std::uint64_t seed)
{
    nlohmann::json d = doc;
    d["seed"] = seed;
    return config_from_json(d);
}

void ensure_writable(const fs::path& target, bool force)
{
    if (fs::exists(target) && !force) {
        const bool non_empty = !fs::is_directory(target) || fs::directory_iterator(target) != fs::directory_iterator();
        if (non_empty)
            throw RuntimeFailure(target.string() + " already exists; pass --force to overwrite");
    }
}

fs::path seed_dir(const fs::path& base, std::uint64_t seed, bool multi)
{
    return multi ? base / fmt::format("seed_{}", seed) : base;
}

void write_run(const RunResult& r, const fs::path& dir, bool plot)
{
    write_outputs(r.outputs, dir);
    if (plot) {
        const Panel p = ear_panel({{std::string(to_string(r.config.mode)), r.outputs.ear}});
        write_svg(dir / "ear.svg", std::span(&p, 1));
    }
}

int cmd_run(const CommonOptions& o)
{
    const nlohmann::json doc = base_document(o);
    const auto seeds = effective_seeds(o, doc);
    std::vector<ScenarioConfig> configs;
    for (auto s : seeds)
        configs.push_back(with_seed(doc, s));
    const bool multi = seeds.size() > 1;
    const fs::path mode_dir = fs::path(o.out) / std::string(to_string(configs.front().mode));
    for (const ScenarioConfig& c : configs)
        ensure_writable(seed_dir(mode_dir, c.seed, multi), o.force);

    std::mutex io;
    run_batch<int>(configs, o.jobs, [&](RunResult&& r) {
        const fs::path dir = seed_dir(mode_dir, r.config.seed, multi);
        write_run(r, dir, o.plot);
        std::lock_guard lock(io);
        fmt::print("seed {}: {} events, outputs in {}\n", r.config.seed, r.summary.events_processed, dir.string());
        return 0;
    });
    return 0;
}

int cmd_study(const CommonOptions& o)
{
    const nlohmann::json doc = base_document(o);
    const auto seeds = effective_seeds(o, doc);
    const bool multi = seeds.size() > 1;
    const fs::path out(o.out);
    ensure_writable(out / "study.csv", o.force);
    for (auto s : seeds) {
        for (Mode m : kAllModes)
            ensure_writable(seed_dir(out, s, multi) / std::string(to_string(m)), o.force);
    }

    std::vector<ScenarioConfig> configs;
    for (auto s : seeds) {
        for (Mode m : kAllModes)
            configs.push_back(with_seed(document_for_mode(doc, m), s));
    }

    struct Reduced {
        std::uint64_t seed;
        std::vector<StudyRow> rows;
        std::vector<EarSample> ear_for_plot;
    };
    const auto reduced = run_batch<Reduced>(configs, o.jobs, [&](RunResult&& r) {
        const fs::path dir = seed_dir(out, r.config.seed, multi) / std::string(to_string(r.config.mode));
        write_run(r, dir, false);
        Reduced red{r.config.seed, rows_for(r), {}};
        if (o.plot)
            red.ear_for_plot = std::move(r.outputs.ear);
        return red;
    });

    std::vector<StudyTable> tables;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        StudyTable t;
        std::vector<std::pair<std::string, std::vector<EarSample>>> curves;
        for (std::size_t k = 0; k < kAllModes.size(); ++k) {
            const Reduced& red = reduced[i * kAllModes.size() + k];
            t.insert(t.end(), red.rows.begin(), red.rows.end());
            if (o.plot)
                curves.emplace_back(std::string(to_string(kAllModes[k])), red.ear_for_plot);
        }
        const fs::path dir = seed_dir(out, seeds[i], multi);
        write_table_csv(t, dir / "study.csv");
        if (o.plot) {
            const Panel p = ear_panel(curves);
            write_svg(dir / "ear.svg", std::span(&p, 1));
        }
        if (multi)
            fmt::print("seed {}\n{}\n", seeds[i], format_table(t));
        tables.push_back(std::move(t));
    }

    const StudyTable mean = mean_table(tables);
    write_table_csv(mean, out / "study.csv");
    const std::string text = format_table(mean);
    std::ofstream(out / "study.txt") << text;
    fmt::print("{}{}\n", multi ? fmt::format("mean over {} seeds\n", seeds.size()) : std::string(), text);
    fmt::print("{}\n", check_ordering(mean).text);
    return 0;
}

int cmd_sweep(const CommonOptions& o)
{
    const nlohmann::json doc = base_document(o);
    const auto seeds = effective_seeds(o, doc);
    const fs::path out(o.out);
    ensure_writable(out / "sweep.csv", o.force);
    fs::create_directories(out);

    const auto dims = sweep_dims();
    std::vector<ScenarioConfig> configs;
    for (std::size_t dim : dims) {
        for (auto s : seeds)
            configs.push_back(with_seed(document_for_dim(doc, dim), s));
    }
    std::mutex io;
    const auto rows = run_batch<SweepRow>(configs, o.jobs, [&](RunResult&& r) {
        SweepRow row = sweep_row(r);
        std::lock_guard lock(io);
        fmt::print("gs {:>3} seed {}: ear_uas {:.2f}% cbr {:.2f}%\n", row.gs_count, r.config.seed, 100 * row.ear_uas,
                   100 * row.cbr_uas);
        return row;
    });

    std::vector<SweepRow> mean;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        std::vector<SweepRow> per_seed(rows.begin() + static_cast<std::ptrdiff_t>(i * seeds.size()),
                                       rows.begin() + static_cast<std::ptrdiff_t>((i + 1) * seeds.size()));
        mean.push_back(mean_sweep_row(per_seed));
    }
    write_sweep_csv(mean, out / "sweep.csv");
    if (o.plot) {
        const auto panels = sweep_panels(mean);
        write_svg(out / "sweep.svg", panels);
    }
    fmt::print("wrote {}\n", (out / "sweep.csv").string());
    return 0;
}

int cmd_validate(const CommonOptions& o)
{
    const ScenarioConfig cfg = config_from_json(base_document(o));
    fmt::print("{}\n", to_json(cfg).dump(2));
    return 0;
}

int cmd_plot(const std::string& dir_arg, bool force)
{
    const fs::path dir(dir_arg);
    if (!fs::is_directory(dir))
        throw RuntimeFailure(dir.string() + " is not a directory");
    int written = 0;

    if (fs::exists(dir / "sweep.csv")) {
        ensure_writable(dir / "sweep.svg", force);
        const auto rows = read_sweep_csv(dir / "sweep.csv");
        write_svg(dir / "sweep.svg", sweep_panels(rows));
        ++written;
    }

    std::vector<std::pair<std::string, std::vector<EarSample>>> curves;
    if (fs::exists(dir / "ear.csv"))
        curves.emplace_back(dir.filename().string(), read_ear_csv(dir / "ear.csv"));
    for (Mode m : kAllModes) {
        const fs::path f = dir / std::string(to_string(m)) / "ear.csv";
        if (fs::exists(f))
            curves.emplace_back(std::string(to_string(m)), read_ear_csv(f));
    }
    if (!curves.empty()) {
        ensure_writable(dir / "ear.svg", force);
        const Panel p = ear_panel(curves);
        write_svg(dir / "ear.svg", std::span(&p, 1));
        ++written;
    }
    if (written == 0)
        throw RuntimeFailure("nothing to plot in " + dir.string() + " (no ear.csv or sweep.csv)");
    fmt::print("plotted {}\n", dir.string());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cooperative perception simulator for urban air mobility"};
    app.require_subcommand(1);

    CommonOptions run_opts, study_opts, sweep_opts, validate_opts;
    auto* run = app.add_subcommand("run", "Run one scenario");
    add_common(*run, run_opts, true);
    auto* study = app.add_subcommand("study", "Run all five modes and tabulate them");
    add_common(*study, study_opts, false);
    auto* sweep = app.add_subcommand("gs-sweep", "Vary the number of ground stations");
    add_common(*sweep, sweep_opts, false);
    auto* validate_cmd = app.add_subcommand("validate", "Check a configuration and print it with defaults");
    add_common(*validate_cmd, validate_opts, true);
    auto* plot = app.add_subcommand("plot", "Render SVG plots from existing CSV outputs");
    std::string plot_dir;
    bool plot_force = false;
    plot->add_option("dir", plot_dir, "Output directory of run, study or gs-sweep")->required();
    plot->add_flag("--force", plot_force, "Overwrite existing plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run)
            return cmd_run(run_opts);
        if (*study)
            return cmd_study(study_opts);
        if (*sweep)
            return cmd_sweep(sweep_opts);
        if (*validate_cmd)
            return cmd_validate(validate_opts);
        if (*plot)
            return cmd_plot(plot_dir, plot_force);
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitRuntime;
    }
    return kExitRuntime;
}
