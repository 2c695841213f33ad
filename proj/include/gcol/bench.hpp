#pragma once
// benchmark harness: runs a corpus of instances against a matrix of solver
// configurations and produces CSV rows plus a solved-within-time summary
// suitable for survival plots.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcol/driver.hpp"
#include "gcol/graph.hpp"

namespace gcol::bench {

// one labeled entry of the configuration matrix. mode and flags are the
// strings that end up in the CSV; derive them with named_config so the
// CLI and the harness agree on spelling
struct NamedConfig {
    std::string mode;
    std::string flags;
    SolveConfig cfg;
};

std::string mode_name(Mode mode);
std::string flag_string(const SolveConfig& cfg);
NamedConfig named_config(const SolveConfig& cfg);

struct Instance {
    std::string name;
    Graph graph;
    std::string error;  // nonempty: unreadable input, emits a warning row
};

// *.col files of a directory in filename order; unreadable files become
// error-tagged instances rather than being dropped silently
std::vector<Instance> load_directory(const std::string& dir);

// G(n, p) cross-product corpus; every (n, p) cell gets graphs_per_cell
// instances seeded base_seed, base_seed + 1, ...
std::vector<Instance> er_corpus(const std::vector<int>& sizes,
                                const std::vector<double>& densities,
                                int graphs_per_cell, std::uint64_t base_seed);

inline constexpr int kCsvSchemaVersion = 1;

// stable, versioned column set; every row carries the schema version so
// concatenated files stay self-describing
std::string csv_header();

struct Result {
    std::string csv;      // header plus one row per (instance, config)
    std::string summary;  // solved-within-t counts per configuration
};

// runs every readable instance under every configuration; jobs > 1
// dispatches to a bounded worker pool, and rows are merged in input order
// either way. progress lines go to log when it is set
Result run_benchmark(const std::vector<Instance>& instances,
                     const std::vector<NamedConfig>& configs, int jobs,
                     std::ostream* log = nullptr);

}  // namespace gcol::bench
