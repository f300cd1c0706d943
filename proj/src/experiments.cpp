#include "uamcp/experiments.hpp"

#include <fmt/format.h>

#include <fstream>
#include <stdexcept>

namespace uamcp {

nlohmann::json document_for_mode(nlohmann::json base, Mode mode)
{
    base["mode"] = std::string(to_string(mode));
    if (mode != Mode::Central)
        base.erase("gs_grid_dim");
    else if (base.contains("gs_grid_dim") && base["gs_grid_dim"] == 0)
        base.erase("gs_grid_dim");
    return base;
}

std::vector<std::size_t> sweep_dims()
{
    std::vector<std::size_t> dims{0};
    for (std::size_t m = 5; m <= 15; ++m)
        dims.push_back(m);
    return dims;
}

nlohmann::json document_for_dim(nlohmann::json base, std::size_t dim)
{
    if (dim == 0)
        return document_for_mode(std::move(base), Mode::CaCp);
    base["mode"] = std::string(to_string(Mode::Central));
    base["gs_grid_dim"] = dim;
    return base;
}

namespace {

const Stat* find_stat(const RunOutputs& o, const std::string& key)
{
    auto it = o.summary.find(key);
    return it == o.summary.end() || it->second.empty() ? nullptr : &it->second;
}

void fill(StudyRow& row, const Stat* ear, const Stat* payload, const Stat* cbr)
{
    if (ear) {
        row.ear_avg = 100.0 * ear->avg();
        row.ear_max = 100.0 * ear->max;
    }
    if (payload) {
        row.payload_min = payload->min;
        row.payload_avg = payload->avg();
        row.payload_max = payload->max;
    }
    if (cbr) {
        row.cbr_min = 100.0 * cbr->min;
        row.cbr_avg = 100.0 * cbr->avg();
        row.cbr_max = 100.0 * cbr->max;
    }
}

const StudyRow* row_named(const StudyTable& t, std::string_view name)
{
    for (const StudyRow& r : t) {
        if (r.scenario == name)
            return &r;
    }
    return nullptr;
}

} // namespace

std::vector<StudyRow> rows_for(const RunResult& r)
{
    const RunOutputs& o = r.outputs;
    std::vector<StudyRow> rows(1);
    rows[0].scenario = std::string(to_string(r.config.mode));
    fill(rows[0], find_stat(o, "ear_uas"), find_stat(o, "payload_uas"), find_stat(o, "cbr_uas"));
    if (r.config.mode == Mode::Central) {
        StudyRow gs;
        gs.scenario = "central_gs";
        fill(gs, find_stat(o, "ear_backend"), find_stat(o, "payload_gs_cpm"), find_stat(o, "cbr_gs"));
        rows.push_back(gs);
    }
    return rows;
}

StudyTable mean_table(const std::vector<StudyTable>& tables)
{
    if (tables.empty())
        return {};
    StudyTable out = tables.front();
    for (std::size_t i = 0; i < out.size(); ++i) {
        StudyRow sum{out[i].scenario};
        for (const StudyTable& t : tables) {
            if (t.size() != out.size() || t[i].scenario != out[i].scenario)
                throw std::invalid_argument("tables have different layouts");
            const StudyRow& r = t[i];
            sum.ear_avg += r.ear_avg;
            sum.ear_max += r.ear_max;
            sum.payload_min += r.payload_min;
            sum.payload_avg += r.payload_avg;
            sum.payload_max += r.payload_max;
            sum.cbr_min += r.cbr_min;
            sum.cbr_avg += r.cbr_avg;
            sum.cbr_max += r.cbr_max;
        }
        const auto n = static_cast<double>(tables.size());
        out[i] = StudyRow{sum.scenario,          sum.ear_avg / n,     sum.ear_max / n,
                          sum.payload_min / n,   sum.payload_avg / n, sum.payload_max / n,
                          sum.cbr_min / n,       sum.cbr_avg / n,     sum.cbr_max / n};
    }
    return out;
}

std::string format_table(const StudyTable& t)
{
    std::string s = fmt::format("{:<12} {:>8} {:>8} | {:>8} {:>8} {:>8} | {:>7} {:>7} {:>7}\n", "scenario", "ear_avg",
                                "ear_max", "pl_min", "pl_avg", "pl_max", "cbr_min", "cbr_avg", "cbr_max");
    for (const StudyRow& r : t) {
        const std::string label = r.scenario == "central_gs" ? "  gs" : r.scenario;
        s += fmt::format("{:<12} {:>8.2f} {:>8.2f} | {:>8.0f} {:>8.0f} {:>8.0f} | {:>7.2f} {:>7.2f} {:>7.2f}\n", label,
                         r.ear_avg, r.ear_max, r.payload_min, r.payload_avg, r.payload_max, r.cbr_min, r.cbr_avg,
                         r.cbr_max);
    }
    return s;
}

void write_table_csv(const StudyTable& t, const std::filesystem::path& file)
{
    std::ofstream out(file);
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    out << "scenario,ear_avg,ear_max,payload_min,payload_avg,payload_max,cbr_min,cbr_avg,cbr_max\n";
    for (const StudyRow& r : t) {
        out << fmt::format("{},{:.4f},{:.4f},{:.2f},{:.2f},{:.2f},{:.4f},{:.4f},{:.4f}\n", r.scenario, r.ear_avg,
                           r.ear_max, r.payload_min, r.payload_avg, r.payload_max, r.cbr_min, r.cbr_avg, r.cbr_max);
    }
}

OrderingCheck check_ordering(const StudyTable& t)
{
    const StudyRow* local = row_named(t, "local");
    const StudyRow* ca = row_named(t, "ca");
    const StudyRow* cp = row_named(t, "cp");
    const StudyRow* cacp = row_named(t, "ca_cp");
    const StudyRow* central = row_named(t, "central");
    const StudyRow* backend = row_named(t, "central_gs");
    if (!local || !ca || !cp || !cacp || !central || !backend)
        return {false, "ordering: incomplete table"};
    const bool holds = local->ear_avg < ca->ear_avg && ca->ear_avg < cp->ear_avg &&
                       std::abs(cacp->ear_avg - cp->ear_avg) <= 5.0 && cp->ear_avg <= central->ear_avg &&
                       central->ear_avg < backend->ear_avg;
    return {holds, fmt::format("ordering {}: local {:.2f} < ca {:.2f} < cp {:.2f} ~ ca_cp {:.2f} <= central {:.2f} "
                               "< backend {:.2f}",
                               holds ? "holds" : "VIOLATED", local->ear_avg, ca->ear_avg, cp->ear_avg, cacp->ear_avg,
                               central->ear_avg, backend->ear_avg)};
}

SweepRow sweep_row(const RunResult& r)
{
    const RunOutputs& o = r.outputs;
    SweepRow row;
    row.gs_count = o.n_gs;
    if (const Stat* s = find_stat(o, "ear_uas"))
        row.ear_uas = s->avg();
    if (const Stat* s = find_stat(o, "ear_backend"))
        row.ear_backend = s->avg();
    if (const Stat* s = find_stat(o, "cbr_uas"))
        row.cbr_uas = s->avg();
    if (const Stat* s = find_stat(o, "messages_per_uas"))
        row.messages_per_uas = s->avg();
    if (const Stat* s = find_stat(o, "messages_per_gs"))
        row.messages_per_gs = s->avg();
    if (const Stat* s = find_stat(o, "messages_per_node"))
        row.messages_total = s->sum;

    Duration lo = Duration::max();
    Duration hi = Duration::zero();
    for (const auto& [key, g] : o.generation_gaps) {
        if (g.generations < 2)
            continue;
        lo = std::min(lo, g.min);
        hi = std::max(hi, g.max);
    }
    row.min_gap_s = lo == Duration::max() ? 0.0 : to_seconds(lo);
    row.max_gap_s = to_seconds(hi);
    return row;
}

SweepRow mean_sweep_row(const std::vector<SweepRow>& rows)
{
    if (rows.empty())
        return {};
    SweepRow m;
    m.gs_count = rows.front().gs_count;
    m.min_gap_s = rows.front().min_gap_s;
    double backend = 0, per_gs = 0;
    for (const SweepRow& r : rows) {
        m.ear_uas += r.ear_uas;
        m.cbr_uas += r.cbr_uas;
        m.messages_per_uas += r.messages_per_uas;
        m.messages_total += r.messages_total;
        if (r.ear_backend)
            backend += *r.ear_backend;
        if (r.messages_per_gs)
            per_gs += *r.messages_per_gs;
        m.min_gap_s = std::min(m.min_gap_s, r.min_gap_s);
        m.max_gap_s = std::max(m.max_gap_s, r.max_gap_s);
    }
    const auto n = static_cast<double>(rows.size());
    m.ear_uas /= n;
    m.cbr_uas /= n;
    m.messages_per_uas /= n;
    m.messages_total /= n;
    if (rows.front().ear_backend)
        m.ear_backend = backend / n;
    if (rows.front().messages_per_gs)
        m.messages_per_gs = per_gs / n;
    return m;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& file)
{
    std::ofstream out(file);
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    out << "gs_count,ear_uas,ear_backend,cbr_uas,messages_per_uas,messages_per_gs,messages_total,min_gap_s,max_gap_s\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : std::string(); };
    for (const SweepRow& r : rows) {
        out << fmt::format("{},{:.6f},{},{:.6f},{:.3f},{},{:.1f},{:.6f},{:.6f}\n", r.gs_count, r.ear_uas,
                           opt(r.ear_backend), r.cbr_uas, r.messages_per_uas, opt(r.messages_per_gs),
                           r.messages_total, r.min_gap_s, r.max_gap_s);
    }
}

} // namespace uamcp
