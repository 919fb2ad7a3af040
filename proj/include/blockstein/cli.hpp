#pragma once

// Batch command-line front end: group catalog and JSON group input, the four
// computation subcommands with JSON reports, INI config, and a cache
// directory acting as a pure memo.

#include <iosfwd>
#include <string>

#include "blockstein/source.hpp"

namespace blockstein {

struct Config {
    int p = 2;
    int m = 0;  // 0 = choose the splitting degree automatically
    int max_degree = 3;
    long budget = 200000;
    uint64_t seed = 0;
    std::string cache_dir;

    void validate() const;
};

Config load_config_file(const std::string& path);  // INI-style key=value
void apply_env(Config& cfg);                       // BLOCKSTEIN_CACHE

// catalog name or a path to a JSON file {"order": n, "table": [[int]]}
GroupPtr load_group(const std::string& spec, int order_cap = 64);

struct CmdResult {
    int exit_code = 0;   // 0 ok, 1 verification failure, 2 usage, 3 budget
    std::string report;  // deterministic JSON text
};

CmdResult cmd_cohomology(const std::string& group, const Config& cfg, int deg, bool bases);
CmdResult cmd_hochschild(const std::string& group, const Config& cfg, int deg, bool verify);
CmdResult cmd_blocks(const std::string& group, const Config& cfg, int deg, int block_index,
                     bool verify);
CmdResult cmd_source(const std::string& group, const Config& cfg, int deg, int block_index,
                     bool verify);

// full argument parsing; returns the process exit code and writes the report
// (or error text) to out
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace blockstein
