#include "uamcp/experiments.hpp"
#include "uamcp/plot.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace uamcp;

namespace {

StudyTable table(double local, double ca, double cp, double cacp, double central, double backend)
{
    auto row = [](const char* name, double ear) {
        StudyRow r;
        r.scenario = name;
        r.ear_avg = ear;
        return r;
    };
    return {row("local", local), row("ca", ca),           row("cp", cp),
            row("ca_cp", cacp),  row("central", central), row("central_gs", backend)};
}

} // namespace

TEST(Experiments, ModeDocumentsDropGroundStationsOutsideCentral)
{
    nlohmann::json base = {{"n_uas", 10}, {"gs_grid_dim", 4}};
    EXPECT_FALSE(document_for_mode(base, Mode::Cp).contains("gs_grid_dim"));
    EXPECT_EQ(document_for_mode(base, Mode::Central)["gs_grid_dim"], 4);
    EXPECT_EQ(document_for_mode(base, Mode::Cp)["mode"], "cp");
    base["gs_grid_dim"] = 0;
    EXPECT_FALSE(document_for_mode(base, Mode::Central).contains("gs_grid_dim"));
}

TEST(Experiments, SweepCoversZeroAndFiveToFifteen)
{
    const auto dims = sweep_dims();
    ASSERT_EQ(dims.size(), 12u);
    EXPECT_EQ(dims.front(), 0u);
    EXPECT_EQ(dims[1], 5u);
    EXPECT_EQ(dims.back(), 15u);
    EXPECT_EQ(document_for_dim({}, 0)["mode"], "ca_cp");
    const auto d = document_for_dim({}, 7);
    EXPECT_EQ(d["mode"], "central");
    EXPECT_EQ(d["gs_grid_dim"], 7);
    EXPECT_EQ(config_from_json(d).gs_count(), 49u);
}

TEST(Experiments, MeanTableAveragesCells)
{
    const auto a = table(1, 2, 3, 4, 5, 6);
    const auto b = table(3, 4, 5, 6, 7, 8);
    const auto m = mean_table({a, b});
    ASSERT_EQ(m.size(), 6u);
    EXPECT_DOUBLE_EQ(m[0].ear_avg, 2.0);
    EXPECT_DOUBLE_EQ(m[5].ear_avg, 7.0);
    auto bad = b;
    bad.pop_back();
    EXPECT_THROW(mean_table({a, bad}), std::invalid_argument);
}

TEST(Experiments, OrderingCheck)
{
    EXPECT_TRUE(check_ordering(table(5, 10, 30, 32, 60, 95)).holds);
    EXPECT_FALSE(check_ordering(table(12, 10, 30, 32, 60, 95)).holds);  // local above ca
    EXPECT_FALSE(check_ordering(table(5, 10, 30, 40, 60, 95)).holds);   // ca_cp far from cp
    EXPECT_FALSE(check_ordering(table(5, 10, 30, 32, 96, 95)).holds);   // backend not on top
    EXPECT_FALSE(check_ordering(StudyTable{}).holds);
}

TEST(Experiments, RowsForCentralRunIncludeGroundStations)
{
    auto doc = document_for_mode(preset_document("small"), Mode::Central);
    doc["duration"] = 12.0;
    doc["spawn_window"] = 2.0;
    const RunResult r = run_simulation(config_from_json(doc));
    const auto rows = rows_for(r);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].scenario, "central");
    EXPECT_EQ(rows[1].scenario, "central_gs");
    EXPECT_GT(rows[1].payload_max, rows[0].payload_max);
    const SweepRow s = sweep_row(r);
    EXPECT_EQ(s.gs_count, 25u);
    ASSERT_TRUE(s.ear_backend);
    ASSERT_TRUE(s.messages_per_gs);
    EXPECT_GE(s.min_gap_s, 0.1 - 1e-9);
}

TEST(Experiments, RunBatchKeepsOrderAndRethrows)
{
    auto doc = preset_document("small");
    doc["mode"] = "ca";
    doc["duration"] = 12.0;
    doc["spawn_window"] = 2.0;
    std::vector<ScenarioConfig> cfgs;
    for (std::uint64_t s = 1; s <= 3; ++s) {
        doc["seed"] = s;
        cfgs.push_back(config_from_json(doc));
    }
    const auto seeds = run_batch<std::uint64_t>(cfgs, 2, [](RunResult&& r) { return r.config.seed; });
    EXPECT_EQ(seeds, (std::vector<std::uint64_t>{1, 2, 3}));
    EXPECT_THROW(run_batch<int>(cfgs, 2, [](RunResult&&) -> int { throw std::runtime_error("boom"); }),
                 std::runtime_error);
}

TEST(Experiments, SweepCsvRoundTrip)
{
    SweepRow a{0, 0.4, std::nullopt, 0.15, 120.0, std::nullopt, 24000.0, 0.1, 1.0};
    SweepRow b{25, 0.9, 1.01, 0.2, 130.0, 95.0, 28375.0, 0.1, 1.1};
    const auto file = std::filesystem::temp_directory_path() / "uamcp_sweep_test.csv";
    write_sweep_csv({a, b}, file);
    const auto rows = read_sweep_csv(file);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_FALSE(rows[0].ear_backend);
    EXPECT_NEAR(*rows[1].ear_backend, 1.01, 1e-9);
    EXPECT_NEAR(*rows[1].messages_per_gs, 95.0, 1e-9);
    EXPECT_EQ(rows[1].gs_count, 25u);
    std::filesystem::remove(file);
}

TEST(Experiments, MeanSweepRow)
{
    SweepRow a{25, 0.8, 1.0, 0.2, 100.0, 50.0, 1000.0, 0.1, 1.0};
    SweepRow b{25, 1.0, 1.1, 0.3, 120.0, 70.0, 1200.0, 0.2, 1.1};
    const SweepRow m = mean_sweep_row({a, b});
    EXPECT_NEAR(m.ear_uas, 0.9, 1e-12);
    EXPECT_NEAR(*m.ear_backend, 1.05, 1e-12);
    EXPECT_NEAR(*m.messages_per_gs, 60.0, 1e-12);
    EXPECT_EQ(m.min_gap_s, 0.1);
    EXPECT_EQ(m.max_gap_s, 1.1);
}

TEST(Plot, SvgHasOnePolylinePerSeries)
{
    SweepRow a{0, 0.4, std::nullopt, 0.15, 120.0, std::nullopt, 24000.0, 0.1, 1.0};
    SweepRow b{25, 0.9, 1.01, 0.2, 130.0, 95.0, 28375.0, 0.1, 1.1};
    const std::vector rows{a, b};
    const auto panels = sweep_panels(rows);
    ASSERT_EQ(panels.size(), 3u);
    const std::string svg = render_svg(panels);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    std::size_t lines = 0;
    for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1))
        ++lines;
    EXPECT_EQ(lines, 5u);
}

TEST(Plot, EarCsvReadsBackendAndMissingValues)
{
    const auto file = std::filesystem::temp_directory_path() / "uamcp_ear_test.csv";
    {
        std::ofstream out(file);
        out << "time_s,observer,known,active,ear\n0.0,0,0,0,\n0.1,0,1,2,0.5\n0.1,backend,2,2,1.0\n";
    }
    const auto ear = read_ear_csv(file);
    ASSERT_EQ(ear.size(), 3u);
    EXPECT_FALSE(ear[0].ear);
    EXPECT_EQ(ear[2].observer, kBackendObserver);
    const Series s = mean_uas_ear("x", ear);
    ASSERT_EQ(s.points.size(), 1u);
    EXPECT_DOUBLE_EQ(s.points[0].second, 50.0);
    ASSERT_TRUE(backend_ear("b", ear));
    std::filesystem::remove(file);
}
