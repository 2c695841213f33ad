// command line front end: solve (chromatic number), decide (k-colorability)
// and bench (corpus runs producing CSV + survival summary).
//
// exit codes: 0 solved / bench completed, 10 SAT decision, 20 UNSAT
// decision, 30 budget exhausted, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcol/bench.hpp"
#include "gcol/bounds.hpp"
#include "gcol/driver.hpp"
#include "gcol/encodings.hpp"
#include "gcol/graph.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitBudget = 30;
constexpr int kExitUsage = 2;

struct CommonArgs {
    gcol::SolveConfig cfg;
    bool print_coloring = false;
    bool stats_json = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    static const std::map<std::string, gcol::Mode> modes{
        {"zykov", gcol::Mode::zykov},
        {"transitivity-only", gcol::Mode::transitivity_only},
        {"full", gcol::Mode::full_zykov},
        {"assignment", gcol::Mode::assignment},
    };
    static const std::map<std::string, bool> decisions{
        {"default", false},
        {"clique", true},
    };
    cmd->add_option("--mode", args.cfg.mode, "solving mode")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->default_str("zykov");
    cmd->add_flag_callback(
        "--top-down", [&args] { args.cfg.search = gcol::SearchOrder::top_down; },
        "search budgets from the upper bound downward");
    cmd->add_flag_callback(
        "--non-incremental", [&args] { args.cfg.incremental = false; },
        "fresh solver per budget");
    cmd->add_flag_callback("--no-mnts", [&args] { args.cfg.use_mnts = false; },
                           "disable tabu-search clique escalation");
    cmd->add_flag_callback(
        "--no-dominated", [&args] { args.cfg.use_dominated_hints = false; },
        "disable dominated-vertex decision hints");
    cmd->add_option("--decision", args.cfg.clique_decisions,
                    "decision strategy: default or clique")
        ->transform(CLI::CheckedTransformer(decisions, CLI::ignore_case))
        ->default_str("default");
    cmd->add_option("--time-limit", args.cfg.time_limit_s,
                    "wall-clock budget in seconds (0 = off)");
    cmd->add_option("--conflict-budget", args.cfg.conflict_budget,
                    "total conflict budget (0 = off)");
    cmd->add_option("--seed", args.cfg.seed, "random seed for clique search");
    cmd->add_option("-v,--verbosity", args.cfg.verbosity, "solver chatter level");
    cmd->add_flag("--print-coloring", args.print_coloring,
                  "print the coloring as one color per vertex");
    cmd->add_flag("--stats-json", args.stats_json,
                  "print run statistics as a single JSON line");
}

const char* status_name(gcol::sat::Status s) {
    switch (s) {
        case gcol::sat::Status::sat: return "sat";
        case gcol::sat::Status::unsat: return "unsat";
        case gcol::sat::Status::unknown: return "unknown";
    }
    return "?";
}

void print_coloring_line(const gcol::Coloring& coloring) {
    std::cout << "coloring:";
    for (size_t v = 1; v < coloring.size(); ++v)
        std::cout << ' ' << coloring[v];
    std::cout << '\n';
}

nlohmann::json run_to_json(const gcol::KRun& run) {
    return {
        {"k", run.k},
        {"status", status_name(run.status)},
        {"seconds", run.seconds},
        {"conflicts", run.conflicts},
        {"decisions", run.decisions},
        {"propagations", run.propagations},
        {"external_propagations", run.external_propagations},
        {"clique_prunes", run.clique_prunes},
        {"mnts_prunes", run.mnts_prunes},
        {"mycielskian_prunes", run.mycielskian_prunes},
        {"positive_prunes", run.positive_prunes},
        {"decide_hints", run.decide_hints},
    };
}

void print_human_stats(const std::string& path, const gcol::Graph& g,
                       const CommonArgs& args, const gcol::SolveReport& r) {
    std::cout << "instance:    " << path << " (" << g.num_vertices() << " vertices, "
              << g.num_edges() << " edges)\n";
    std::cout << "config:      " << gcol::bench::mode_name(args.cfg.mode) << " "
              << gcol::bench::flag_string(args.cfg) << '\n';
    std::cout << "root clique: " << r.root_clique_size << ", root bound " << r.root_bound
              << ", dsatur " << r.dsatur_colors << ", reduced to " << r.reduced_n
              << " vertices\n";
    for (const gcol::KRun& run : r.runs) {
        std::ostringstream line;
        line << "  k=" << run.k << ": " << status_name(run.status) << " in " << run.seconds
             << " s, " << run.conflicts << " conflicts, " << run.decisions
             << " decisions";
        if (run.clique_prunes + run.mnts_prunes + run.mycielskian_prunes +
                run.positive_prunes >
            0)
            line << ", prunes " << run.clique_prunes << "/" << run.mnts_prunes << "/"
                 << run.mycielskian_prunes << "/" << run.positive_prunes
                 << " (clique/tabu/mycielskian/positive)";
        std::cout << line.str() << '\n';
    }
    std::cout << "time:        " << r.seconds << " s\n";
}

int cmd_solve(const std::string& path, const CommonArgs& args) {
    const gcol::Graph g = gcol::parse_dimacs_file(path);
    const gcol::SolveReport r = gcol::solve_chromatic(g, args.cfg);

    if (r.outcome == gcol::SolveReport::Outcome::optimal)
        std::cout << "chromatic number: " << r.chi << '\n';
    else
        std::cout << "chromatic number: unknown\nbounds: [" << r.lb << ", " << r.ub
                  << "]\n";
    if (args.print_coloring)
        print_coloring_line(r.coloring);
    if (args.stats_json) {
        nlohmann::json j{
            {"instance", path},
            {"n", g.num_vertices()},
            {"m", g.num_edges()},
            {"mode", gcol::bench::mode_name(args.cfg.mode)},
            {"flags", gcol::bench::flag_string(args.cfg)},
            {"outcome",
             r.outcome == gcol::SolveReport::Outcome::optimal ? "optimal" : "unknown"},
            {"lb", r.lb},
            {"ub", r.ub},
            {"root_clique", r.root_clique_size},
            {"root_bound", r.root_bound},
            {"dsatur", r.dsatur_colors},
            {"reduced_n", r.reduced_n},
            {"seconds", r.seconds},
            {"runs", nlohmann::json::array()},
        };
        if (r.outcome == gcol::SolveReport::Outcome::optimal)
            j["chi"] = r.chi;
        for (const gcol::KRun& run : r.runs)
            j["runs"].push_back(run_to_json(run));
        std::cout << j.dump() << '\n';
    } else {
        print_human_stats(path, g, args, r);
    }
    return r.outcome == gcol::SolveReport::Outcome::optimal ? kExitSolved : kExitBudget;
}

int dump_encoding(const std::string& path, const std::string& out_path, int k,
                  const CommonArgs& args) {
    const gcol::Graph g = gcol::parse_dimacs_file(path);
    gcol::CNF cnf;
    std::vector<std::string> comments{"k = " + std::to_string(k),
                                      "source: " + path};
    if (args.cfg.mode == gcol::Mode::assignment) {
        const gcol::Clique clique = gcol::mnts_clique(g.view(), gcol::kMntsRootIters,
                                                      gcol::kMntsRootDepth, args.cfg.seed);
        cnf = gcol::build_assignment(g, k, clique).cnf;
        comments.insert(comments.begin(), "direct assignment encoding");
    } else if (args.cfg.mode == gcol::Mode::full_zykov) {
        cnf = gcol::build_full_zykov(g, k).cnf;
        comments.insert(comments.begin(), "merge/separate encoding with counter");
    } else {
        std::cerr << "error: --dump-cnf needs --mode assignment or full (the other "
                     "modes have no standalone formula)\n";
        return kExitUsage;
    }
    std::ofstream out(out_path);
    if (not out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return kExitUsage;
    }
    gcol::write_dimacs_cnf(out, cnf, comments);
    std::cout << "wrote " << cnf.clauses.size() << " clauses over " << cnf.num_vars
              << " variables to " << out_path << '\n';
    return kExitSolved;
}

int cmd_decide(const std::string& path, int k, const std::string& dump_path,
               const CommonArgs& args) {
    if (not dump_path.empty())
        return dump_encoding(path, dump_path, k, args);

    const gcol::Graph g = gcol::parse_dimacs_file(path);
    const gcol::DecideResult r = gcol::decide_k(g, k, args.cfg);

    const char* verdict = r.status == gcol::sat::Status::sat     ? "SAT"
                          : r.status == gcol::sat::Status::unsat ? "UNSAT"
                                                                 : "unknown";
    std::cout << k << "-coloring: " << verdict << '\n';
    if (args.print_coloring and r.status == gcol::sat::Status::sat)
        print_coloring_line(r.coloring);
    if (args.stats_json) {
        nlohmann::json j{
            {"instance", path},
            {"n", g.num_vertices()},
            {"m", g.num_edges()},
            {"mode", gcol::bench::mode_name(args.cfg.mode)},
            {"flags", gcol::bench::flag_string(args.cfg)},
            {"k", k},
            {"status", status_name(r.status)},
            {"seconds", r.seconds},
            {"run", run_to_json(r.run)},
        };
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "time:        " << r.seconds << " s, " << r.run.conflicts
                  << " conflicts, " << r.run.decisions << " decisions\n";
    }
    switch (r.status) {
        case gcol::sat::Status::sat: return kExitSat;
        case gcol::sat::Status::unsat: return kExitUnsat;
        case gcol::sat::Status::unknown: return kExitBudget;
    }
    return kExitBudget;
}

struct BenchArgs {
    std::string dir;
    std::vector<int> er_sizes{70, 80, 90, 100, 110};
    std::vector<double> er_densities{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.7, 0.9};
    int er_count = 0;  // > 0 switches the corpus to the generator
    std::uint64_t er_seed = 1;
    std::vector<std::string> modes{"zykov"};
    std::string out_path;
    bool append = false;
    int jobs = 1;
};

int cmd_bench(const BenchArgs& bargs, const CommonArgs& args) {
    std::vector<gcol::bench::Instance> instances;
    if (bargs.er_count > 0)
        instances = gcol::bench::er_corpus(bargs.er_sizes, bargs.er_densities,
                                           bargs.er_count, bargs.er_seed);
    else if (not bargs.dir.empty())
        instances = gcol::bench::load_directory(bargs.dir);
    else {
        std::cerr << "error: bench needs --dir or --er-count\n";
        return kExitUsage;
    }

    static const std::map<std::string, gcol::Mode> modes{
        {"zykov", gcol::Mode::zykov},
        {"transitivity-only", gcol::Mode::transitivity_only},
        {"full", gcol::Mode::full_zykov},
        {"assignment", gcol::Mode::assignment},
    };
    std::vector<gcol::bench::NamedConfig> configs;
    for (const std::string& name : bargs.modes) {
        const auto it = modes.find(name);
        if (it == modes.end()) {
            std::cerr << "error: unknown mode '" << name << "'\n";
            return kExitUsage;
        }
        gcol::SolveConfig cfg = args.cfg;
        cfg.mode = it->second;
        configs.push_back(gcol::bench::named_config(cfg));
    }

    const gcol::bench::Result result =
        gcol::bench::run_benchmark(instances, configs, bargs.jobs, &std::cerr);

    if (bargs.out_path.empty()) {
        // CSV on stdout, summary out of band
        std::cout << result.csv;
        std::cerr << result.summary;
        return kExitSolved;
    }
    std::ofstream out(bargs.out_path, bargs.append ? std::ios::app : std::ios::out);
    if (not out) {
        std::cerr << "error: cannot write " << bargs.out_path << '\n';
        return kExitUsage;
    }
    if (bargs.append) {
        const size_t header_end = result.csv.find('\n');
        out << result.csv.substr(header_end + 1);
    } else {
        out << result.csv;
    }
    std::cout << result.summary;
    return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact graph coloring via a SAT solver with a merge/separate "
                 "propagator"};
    app.require_subcommand(1);

    std::string path;
    std::string dump_path;
    int k = 0;
    CommonArgs common;
    BenchArgs bench_args;

    CLI::App* solve = app.add_subcommand("solve", "compute the chromatic number");
    solve->add_option("file", path, "DIMACS .col input")
        ->required()
        ->check(CLI::ExistingFile);
    add_common_options(solve, common);

    CLI::App* decide = app.add_subcommand("decide", "decide k-colorability");
    decide->add_option("file", path, "DIMACS .col input")
        ->required()
        ->check(CLI::ExistingFile);
    decide->add_option("-k,--k", k, "number of colors")->required()->check(CLI::PositiveNumber);
    decide->add_option("--dump-cnf", dump_path,
                       "write the formula for this k as DIMACS CNF and exit");
    add_common_options(decide, common);

    CLI::App* bench = app.add_subcommand("bench", "run a corpus and emit CSV");
    bench->add_option("--dir", bench_args.dir, "directory of .col instances")
        ->check(CLI::ExistingDirectory);
    bench->add_option("--er-count", bench_args.er_count,
                      "generate this many random graphs per (n, p) cell instead of "
                      "reading --dir");
    bench->add_option("--er-n", bench_args.er_sizes, "vertex counts for the generator")
        ->delimiter(',');
    bench->add_option("--er-p", bench_args.er_densities,
                      "edge probabilities for the generator")
        ->delimiter(',');
    bench->add_option("--er-seed", bench_args.er_seed, "first seed per (n, p) cell");
    bench->add_option("--modes", bench_args.modes,
                      "configuration matrix: comma-separated mode list")
        ->delimiter(',');
    bench->add_option("--out", bench_args.out_path, "CSV output file (default stdout)");
    bench->add_flag("--append", bench_args.append, "append rows without a header");
    bench->add_option("--jobs", bench_args.jobs, "worker pool size")
        ->check(CLI::PositiveNumber);
    add_common_options(bench, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (solve->parsed())
            return cmd_solve(path, common);
        if (decide->parsed())
            return cmd_decide(path, k, dump_path, common);
        return cmd_bench(bench_args, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
