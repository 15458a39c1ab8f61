#pragma once

#include "daysim/sim.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace daysim {

// Simulation config plus run outputs, as read from a JSON experiment file.
struct RunConfig {
    SimConfig sim;
    std::string output_dir = "out";
};

// Parses the JSON experiment file. Every field is optional and defaults to
// the corresponding SimConfig value; unknown keys are rejected by name so a
// typo cannot silently fall back to a default. The parsed config is fully
// validated before this returns.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

} // namespace daysim
