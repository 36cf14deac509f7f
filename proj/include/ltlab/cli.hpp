#pragma once

#include <string>
#include <vector>

#include "ltlab/serialize.hpp"

namespace ltlab {

struct PrecisionBlock {
    int pi_prec = 4;
    int z_low = 0;
    int z_high = 20;
    int witt_len = 2;
    int r_max = 6;
};

// One job: ring, Frobenius ("pi", "gm" or a coefficient list), precisions and
// command arguments.
struct JobConfig {
    RingSpec ring = RingSpec{};
    json frobenius = "pi";
    PrecisionBlock prec;
    json args = json::object();
};

// fields present in j replace those of base; "args" are merged key by key
JobConfig merge_config(JobConfig base, const json& j);
json to_json(const JobConfig& c);
void validate(const JobConfig& c);

const std::vector<std::string>& command_names();

// The result document of one command (without the selftest).
json run_command(const std::string& command, const JobConfig& cfg);

// Full command line without the program name. The document (or an error
// document) is written to out unless --out names a file; returns the exit status.
int run_cli(const std::vector<std::string>& args, std::string& out);

}  // namespace ltlab
