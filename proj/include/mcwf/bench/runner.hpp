#pragma once

#include "mcwf/bench/config.hpp"
#include "mcwf/bench/emit.hpp"

#include <map>
#include <string>
#include <vector>

namespace mcwf::bench {

struct RunOptions {
    std::string output_dir;  // empty: config value, then MCWF_OUTPUT_DIR, then "mcwf-results"
    int threads = 0;         // 0: use sim.threads
};

struct RunSummary {
    std::string output_dir;
    std::vector<std::string> files;  // relative to output_dir, sorted
    nlohmann::json manifest;

    std::map<std::string, BerResult> ber;             // per scheme
    std::map<std::string, std::vector<double>> papr;  // per scheme, raw samples
    std::map<std::string, double> papr_at_level;
    std::map<std::string, AfMetrics> af;
    std::map<std::string, PilotOverhead> pilots;
};

std::string default_output_dir();
std::string file_label(Scheme s);

RunSummary run(const Config& cfg, const RunOptions& opt = {});

}  // namespace mcwf::bench
