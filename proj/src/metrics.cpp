#include "uamcp/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace uamcp {

MetricsRecorder::MetricsRecorder(std::size_t n_uas, std::size_t n_gs)
    : n_uas_(n_uas), n_gs_(n_gs), spawn_(n_uas), despawn_(n_uas), first_known_((n_uas + 1) * n_uas)
{
    out_.n_uas = n_uas;
    out_.n_gs = n_gs;
}

const EarSample& MetricsRecorder::sample_ear(StationId observer, const Lem& lem, std::size_t active_others,
                                             SimTime now)
{
    EarSample s;
    s.time = now;
    s.observer = observer;
    s.known_uas = lem.count_fresh_below(static_cast<StationId>(n_uas_), now);
    s.active_uas = active_others;
    if (active_others > 0)
        s.ear = static_cast<double>(s.known_uas) / static_cast<double>(active_others);
    out_.ear.push_back(s);
    return out_.ear.back();
}

void MetricsRecorder::sample_channel_load(StationId node, double cbr, SimTime now)
{
    out_.channel_load.push_back(CbrSample{now, node, cbr});
}

void MetricsRecorder::record_message(StationId node, Direction dir, MessageClass cls, std::size_t bytes)
{
    MessageCount& c = out_.messages[{node, cls}];
    switch (dir) {
    case Direction::Tx:
        ++c.tx;
        out_.payloads[cls].add(static_cast<double>(bytes));
        break;
    case Direction::Rx: ++c.rx; break;
    case Direction::Drop: ++c.dropped; break;
    }
}

void MetricsRecorder::note_generation(StationId node, MessageClass cls, SimTime now)
{
    auto& last = last_generation_[{node, cls}];
    GenerationGaps& g = out_.generation_gaps[{node, cls}];
    ++g.generations;
    if (last) {
        const Duration gap = now - *last;
        g.min = std::min(g.min, gap);
        g.max = std::max(g.max, gap);
        out_.summary["gen_interval_" + std::string(to_string(cls))].add(to_seconds(gap));
    }
    last = now;
}

void MetricsRecorder::break_generation_chain(StationId node, MessageClass cls)
{
    auto it = last_generation_.find({node, cls});
    if (it != last_generation_.end())
        it->second.reset();
}

std::vector<DelayRecord> MetricsRecorder::first_detection_delays(SimTime end, bool with_backend) const
{
    std::vector<DelayRecord> out;
    auto lifetime_end = [&](StationId id) { return despawn_[id].value_or(end); };
    const std::size_t observers = n_uas_ + (with_backend ? 1 : 0);
    for (std::size_t o = 0; o < observers; ++o) {
        const bool backend = o == n_uas_;
        const StationId observer = backend ? kBackendObserver : static_cast<StationId>(o);
        if (!backend && !spawn_[o])
            continue;
        for (std::size_t t = 0; t < n_uas_; ++t) {
            if (t == o || !spawn_[t])
                continue;
            SimTime from = *spawn_[t];
            SimTime until = lifetime_end(static_cast<StationId>(t));
            if (!backend) {
                from = std::max(from, *spawn_[o]);
                until = std::min(until, lifetime_end(observer));
            }
            if (from >= until)
                continue;
            out.push_back(DelayRecord{observer, static_cast<StationId>(t), from, first_known_[o * n_uas_ + t]});
        }
    }
    return out;
}

RunOutputs MetricsRecorder::finish(SimTime end, bool with_backend)
{
    out_.delays = first_detection_delays(end, with_backend);
    summarize(out_);
    return std::move(out_);
}

void summarize(RunOutputs& out)
{
    // Generation-interval stats are accumulated live; keep them.
    std::map<std::string, Stat> s;
    for (auto& [k, v] : out.summary) {
        if (k.starts_with("gen_interval_"))
            s[k] = v;
    }

    for (const EarSample& e : out.ear) {
        if (!e.ear)
            continue;
        s[e.observer == kBackendObserver ? "ear_backend" : "ear_uas"].add(*e.ear);
    }
    for (const CbrSample& c : out.channel_load)
        s[out.is_ground_station(c.node) ? "cbr_gs" : "cbr_uas"].add(c.cbr);

    for (const auto& [cls, stat] : out.payloads) {
        s["payload_" + std::string(to_string(cls))] = stat;
        if (cls == MessageClass::Cam || cls == MessageClass::Cpm)
            s["payload_uas"].merge(stat);
    }

    std::vector<std::uint64_t> per_node(out.n_uas + out.n_gs, 0);
    for (const auto& [key, count] : out.messages) {
        const auto [node, cls] = key;
        if (node < per_node.size() && (cls == MessageClass::Cam || cls == MessageClass::Cpm || cls == MessageClass::GsCpm))
            per_node[node] += count.tx;
    }
    for (std::size_t i = 0; i < per_node.size(); ++i) {
        const auto v = static_cast<double>(per_node[i]);
        s[i < out.n_uas ? "messages_per_uas" : "messages_per_gs"].add(v);
        s["messages_per_node"].add(v);
    }

    for (const DelayRecord& d : out.delays) {
        if (auto v = d.delay())
            s[d.observer == kBackendObserver ? "delay_backend_s" : "delay_uas_s"].add(*v);
    }
    out.summary = std::move(s);
}

std::string node_label(StationId id)
{
    return id == kBackendObserver ? std::string("backend") : std::to_string(id);
}

namespace {

class CsvFile {
public:
    CsvFile(const std::filesystem::path& path, std::string_view header) : path_(path), out_(path)
    {
        if (!out_)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        out_ << header << '\n';
    }

    void line(const std::string& s) { out_ << s << '\n'; }

    ~CsvFile() noexcept(false)
    {
        out_.flush();
        if (!out_ && std::uncaught_exceptions() == 0)
            throw std::runtime_error("write failed: " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

std::string fmt_num(double v) { return fmt::format("{:.6f}", v); }

} // namespace

void write_outputs(const RunOutputs& out, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    {
        CsvFile f(dir / "ear.csv", "time_s,observer,known,active,ear");
        for (const EarSample& e : out.ear) {
            f.line(fmt::format("{},{},{},{},{}", fmt_num(to_seconds(e.time)), node_label(e.observer), e.known_uas,
                               e.active_uas, e.ear ? fmt_num(*e.ear) : std::string()));
        }
    }
    {
        CsvFile f(dir / "channel_load.csv", "time_s,node,cbr");
        for (const CbrSample& c : out.channel_load)
            f.line(fmt::format("{},{},{}", fmt_num(to_seconds(c.time)), c.node, fmt_num(c.cbr)));
    }
    {
        CsvFile f(dir / "messages.csv", "node,class,tx,rx,dropped");
        for (const auto& [key, c] : out.messages)
            f.line(fmt::format("{},{},{},{},{}", node_label(key.first), to_string(key.second), c.tx, c.rx, c.dropped));
    }
    {
        CsvFile f(dir / "payloads.csv", "class,min_bytes,avg_bytes,max_bytes");
        for (const auto& [cls, st] : out.payloads) {
            if (st.empty())
                continue;
            f.line(fmt::format("{},{},{},{}", to_string(cls), st.min, fmt_num(st.avg()), st.max));
        }
    }
    {
        CsvFile f(dir / "delays.csv", "observer,target,delay_s");
        for (const DelayRecord& d : out.delays) {
            const auto v = d.delay();
            f.line(fmt::format("{},{},{}", node_label(d.observer), d.target, v ? fmt_num(*v) : std::string()));
        }
    }
    {
        CsvFile f(dir / "summary.csv", "metric,avg,max,min");
        for (const auto& [name, st] : out.summary) {
            if (st.empty())
                continue;
            f.line(fmt::format("{},{},{},{}", name, fmt_num(st.avg()), fmt_num(st.max), fmt_num(st.min)));
        }
    }
}

std::optional<double> delay_percentile(const std::vector<DelayRecord>& delays, double pct,
                                       std::optional<StationId> observer_filter)
{
    std::vector<double> v;
    for (const DelayRecord& d : delays) {
        if (observer_filter && d.observer != *observer_filter)
            continue;
        if (auto x = d.delay())
            v.push_back(*x);
    }
    if (v.empty())
        return std::nullopt;
    std::sort(v.begin(), v.end());
    const double rank = std::ceil(pct / 100.0 * static_cast<double>(v.size()));
    const std::size_t idx = rank <= 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
    return v[std::min(idx, v.size() - 1)];
}

} // namespace uamcp
