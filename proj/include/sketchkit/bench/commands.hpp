#pragma once

#include "sketchkit/bench/config.hpp"
#include "sketchkit/core/csv.hpp"

#include <string>
#include <vector>

namespace sketchkit {

std::vector<std::string> command_names();
std::string command_summary(const std::string& command);
// Fresh configuration with the command's key table and defaults. Throws
// ConfigError for an unknown command.
ExperimentConfig make_config(const std::string& command);
// Validates every key, then runs the command's grid.
CsvTable run_command(const ExperimentConfig& cfg);
// Writes to the 'output' key: '-' is standard output; testbed also accepts a
// .mtx path, which receives the matrix instead of the CSV.
void write_command_output(const ExperimentConfig& cfg, const CsvTable& table);

}  // namespace sketchkit
