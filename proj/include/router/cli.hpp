#pragma once
#include "router/config.hpp"

#include <string>
#include <vector>

namespace router {

// usage: router <scenario> --config <file> [--out <dir>] [--seed <n>]
struct CliArgs {
  std::string scenario;
  std::string config_path;
  std::string out_dir; // empty: take from config, then "out"
  long seed = -1;      // -1: take from config, then 1
};

CliArgs parse_cli(int argc, const char* const* argv);

// Static checks; returns "error: ...", "warning: ...", "info: ..." lines and
// never mutates anything. Errors abort a run before any output is written.
std::vector<std::string> validate(const Config& cfg);

// Executes the scenario: writes manifest plus scenario CSVs into the output
// directory. Throws ConfigError for bad configs and NumericalError (or other
// runtime errors) for failed runs; the process front end maps these to exit
// codes 2 and 3.
void run_scenario(const CliArgs& args);

}
