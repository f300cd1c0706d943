#pragma once

#include "uamcp/config.hpp"
#include "uamcp/simulation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace uamcp {

/// Config document for one mode derived from a base document. Ground
/// stations are dropped for the distributed modes; an explicit dim is kept
/// for central mode.
nlohmann::json document_for_mode(nlohmann::json base, Mode mode);

/// Ground-station counts of the sweep: 0 and m*m for m in 5..15.
std::vector<std::size_t> sweep_dims();

/// Sweep point: dim 0 runs ca_cp (no infrastructure), otherwise central.
nlohmann::json document_for_dim(nlohmann::json base, std::size_t dim);

/// One line of the mode comparison table.
struct StudyRow {
    std::string scenario; // mode name, "central_gs" for the ground-station sub-row
    double ear_avg = 0, ear_max = 0;
    double payload_min = 0, payload_avg = 0, payload_max = 0;
    double cbr_min = 0, cbr_avg = 0, cbr_max = 0;
};
using StudyTable = std::vector<StudyRow>;

/// Rows contributed by one run (two for central mode). Percentages for EAR
/// and CBR, bytes for payloads.
std::vector<StudyRow> rows_for(const RunResult& r);

/// Cell-wise mean of tables with identical row layout.
StudyTable mean_table(const std::vector<StudyTable>& tables);

std::string format_table(const StudyTable& t);
void write_table_csv(const StudyTable& t, const std::filesystem::path& file);

struct OrderingCheck {
    bool holds = false;
    std::string text;
};
/// local < ca < cp, cp ~ ca_cp (within 5 pp), cp <= central UAS < backend.
OrderingCheck check_ordering(const StudyTable& t);

struct SweepRow {
    std::size_t gs_count = 0;
    double ear_uas = 0;
    std::optional<double> ear_backend;
    double cbr_uas = 0;
    double messages_per_uas = 0;
    std::optional<double> messages_per_gs;
    double messages_total = 0;
    double min_gap_s = 0; // shortest generation gap over all nodes and classes
    double max_gap_s = 0; // longest gap while content existed
};

SweepRow sweep_row(const RunResult& r);
SweepRow mean_sweep_row(const std::vector<SweepRow>& rows);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& file);

/// Runs configs on up to `jobs` threads and reduces each result with `fn`
/// as soon as it completes, so full per-run tables never pile up.
template <class T>
std::vector<T> run_batch(const std::vector<ScenarioConfig>& configs, unsigned jobs,
                         const std::function<T(RunResult&&)>& fn)
{
    std::vector<std::optional<T>> out(configs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                out[i] = fn(run_simulation(configs[i]));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 1; k < n; ++k)
            pool.emplace_back(worker);
        worker();
    }
    if (failure)
        std::rethrow_exception(failure);
    std::vector<T> values;
    values.reserve(out.size());
    for (auto& v : out)
        values.push_back(std::move(*v));
    return values;
}

} // namespace uamcp
