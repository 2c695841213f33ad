#include "gcol/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace gcol::bench {

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

// minimal CSV quoting: only names and notes can carry awkward characters
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct RowStats {
    std::int64_t conflicts = 0;
    std::int64_t decisions = 0;
    std::int64_t propagations = 0;
    std::int64_t external_propagations = 0;
    std::int64_t clique_prunes = 0;
    std::int64_t mnts_prunes = 0;
    std::int64_t mycielskian_prunes = 0;
    std::int64_t positive_prunes = 0;
    std::int64_t decide_hints = 0;
};

RowStats accumulate(const SolveReport& report) {
    RowStats s;
    for (const KRun& run : report.runs) {
        s.conflicts += run.conflicts;
        s.decisions += run.decisions;
        s.propagations += run.propagations;
        s.external_propagations += run.external_propagations;
        s.clique_prunes += run.clique_prunes;
        s.mnts_prunes += run.mnts_prunes;
        s.mycielskian_prunes += run.mycielskian_prunes;
        s.positive_prunes += run.positive_prunes;
        s.decide_hints += run.decide_hints;
    }
    return s;
}

std::string result_row(const Instance& inst, const NamedConfig& nc,
                       const SolveReport& report) {
    const RowStats s = accumulate(report);
    const bool solved = report.outcome == SolveReport::Outcome::optimal;
    std::ostringstream row;
    row << kCsvSchemaVersion << ',' << csv_field(inst.name) << ','
        << inst.graph.num_vertices() << ',' << inst.graph.num_edges() << ','
        << nc.mode << ',' << csv_field(nc.flags) << ','
        << (solved ? "optimal" : "unknown") << ',';
    if (solved)
        row << report.chi;
    row << ',' << report.lb << ',' << report.ub << ','
        << format_double("%.3f", report.seconds) << ',' << s.conflicts << ','
        << s.decisions << ',' << s.propagations << ',' << s.external_propagations
        << ',' << s.clique_prunes << ',' << s.mnts_prunes << ','
        << s.mycielskian_prunes << ',' << s.positive_prunes << ',' << s.decide_hints
        << ',' << '\n';
    return row.str();
}

std::string error_row(const Instance& inst) {
    std::ostringstream row;
    row << kCsvSchemaVersion << ',' << csv_field(inst.name)
        << ",,,,,error,,,,,,,,,,,,," << csv_field(inst.error) << '\n';
    return row.str();
}

}  // namespace

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::zykov: return "zykov";
        case Mode::transitivity_only: return "transitivity-only";
        case Mode::full_zykov: return "full";
        case Mode::assignment: return "assignment";
    }
    return "?";
}

std::string flag_string(const SolveConfig& cfg) {
    std::string s = cfg.search == SearchOrder::top_down ? "top-down" : "bottom-up";
    s += cfg.incremental ? " incremental" : " non-incremental";
    s += cfg.use_mnts ? " mnts" : " no-mnts";
    s += cfg.use_dominated_hints ? " dominated" : " no-dominated";
    s += cfg.clique_decisions ? " decision=clique" : " decision=default";
    s += " seed=" + std::to_string(cfg.seed);
    if (cfg.time_limit_s > 0)
        s += " tl=" + format_double("%g", cfg.time_limit_s);
    if (cfg.conflict_budget > 0)
        s += " cb=" + std::to_string(cfg.conflict_budget);
    return s;
}

NamedConfig named_config(const SolveConfig& cfg) {
    return NamedConfig{mode_name(cfg.mode), flag_string(cfg), cfg};
}

std::vector<Instance> load_directory(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> paths;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() and entry.path().extension() == ".col")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());

    std::vector<Instance> out;
    out.reserve(paths.size());
    for (const fs::path& p : paths) {
        Instance inst;
        inst.name = p.filename().string();
        try {
            inst.graph = parse_dimacs_file(p.string());
        } catch (const std::exception& e) {
            inst.error = e.what();
        }
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<Instance> er_corpus(const std::vector<int>& sizes,
                                const std::vector<double>& densities,
                                int graphs_per_cell, std::uint64_t base_seed) {
    std::vector<Instance> out;
    for (const int n : sizes) {
        for (const double p : densities) {
            for (int i = 0; i < graphs_per_cell; ++i) {
                const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
                Instance inst;
                inst.name = "er_n" + std::to_string(n) + "_p" + format_double("%g", p) +
                            "_s" + std::to_string(seed);
                inst.graph = erdos_renyi(n, p, seed);
                out.push_back(std::move(inst));
            }
        }
    }
    return out;
}

std::string csv_header() {
    return "schema,instance,n,m,mode,flags,outcome,chi,lb,ub,seconds,conflicts,"
           "decisions,propagations,external_propagations,clique_prunes,mnts_prunes,"
           "mycielskian_prunes,positive_prunes,decide_hints,note\n";
}

Result run_benchmark(const std::vector<Instance>& instances,
                     const std::vector<NamedConfig>& configs, int jobs,
                     std::ostream* log) {
    struct Task {
        const Instance* instance = nullptr;
        const NamedConfig* config = nullptr;  // null: warning row, no work
        size_t config_index = 0;
    };
    std::vector<Task> tasks;
    for (const Instance& inst : instances) {
        if (not inst.error.empty()) {
            tasks.push_back(Task{&inst, nullptr, 0});
            continue;
        }
        for (size_t c = 0; c < configs.size(); ++c)
            tasks.push_back(Task{&inst, &configs[c], c});
    }

    struct Done {
        std::string row;
        size_t config_index = 0;
        bool counted = false;  // readable instance, participates in survival counts
        bool solved = false;
        double seconds = 0.0;
    };
    std::vector<Done> done(tasks.size());

    std::atomic<size_t> next{0};
    std::mutex log_mutex;
    const auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size())
                return;
            const Task& t = tasks[i];
            Done& d = done[i];
            d.config_index = t.config_index;
            if (t.config == nullptr) {
                d.row = error_row(*t.instance);
            } else {
                const SolveReport report = solve_chromatic(t.instance->graph, t.config->cfg);
                d.row = result_row(*t.instance, *t.config, report);
                d.counted = true;
                d.solved = report.outcome == SolveReport::Outcome::optimal;
                d.seconds = report.seconds;
            }
            if (log != nullptr) {
                const std::lock_guard<std::mutex> guard(log_mutex);
                *log << "[" << (i + 1) << "/" << tasks.size() << "] " << t.instance->name;
                if (t.config != nullptr)
                    *log << " (" << t.config->mode << ")";
                *log << '\n' << std::flush;
            }
        }
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
    }

    Result result;
    result.csv = csv_header();
    for (const Done& d : done)
        result.csv += d.row;

    static constexpr double kHorizons[] = {1, 10, 60, 600, 3600};
    std::ostringstream summary;
    summary << "survival summary (csv schema v" << kCsvSchemaVersion << ")\n";
    for (size_t c = 0; c < configs.size(); ++c) {
        int total = 0;
        int within[std::size(kHorizons)] = {};
        for (const Done& d : done) {
            if (not d.counted or d.config_index != c)
                continue;
            ++total;
            if (not d.solved)
                continue;
            for (size_t h = 0; h < std::size(kHorizons); ++h)
                if (d.seconds <= kHorizons[h])
                    ++within[h];
        }
        summary << "config: " << configs[c].mode << " " << configs[c].flags << '\n';
        for (size_t h = 0; h < std::size(kHorizons); ++h) {
            char line[96];
            std::snprintf(line, sizeof line, "  solved within %6.0f s: %d/%d\n",
                          kHorizons[h], within[h], total);
            summary << line;
        }
    }
    result.summary = summary.str();
    return result;
}

}  // namespace gcol::bench
