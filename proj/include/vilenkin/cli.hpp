#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vilenkin/verify.hpp"

namespace vilenkin::cli {

/// Parsed command line. Every field is validated by parse_args.
struct RunConfig {
  std::string command;  // transform | kernel | verify | explore
  std::string group = "2,2,2,2,2,2,2,2";
  int level = -1;       // -1: number of radices (one fewer for kernel-bounds)
  std::string weights = "const";
  std::vector<double> p;
  std::string suite;
  std::uint64_t seed_base = kDefaultSeedBase;
  int seed_count = kDefaultAtomCount;
  Index n_max = 0;
  std::vector<int> support_levels;
  std::optional<int> atom_resolution;
  std::string out_dir = ".";
  ReportFormat format = ReportFormat::csv;
  int workers = 1;
  std::optional<double> drift_tolerance;

  // transform
  std::string input;
  bool inverse = false;
  // kernel
  std::string kernel_kind = "fejer";
  Index n = 1;
  int tail_level = 0;
};

/// Thrown for invalid command lines; exit_code is 0 for --help.
struct UsageError : std::runtime_error {
  UsageError(const std::string &what, int code) : std::runtime_error(what), exit_code(code) {}
  int exit_code;
};

const std::vector<std::string> &suite_names();

RunConfig parse_args(int argc, const char *const *argv);

/// Executes the configured command, writes reports under out_dir and returns
/// 0 iff every judged report passes.
int run(const RunConfig &config, std::ostream &log);

/// parse_args + run with diagnostics on stderr.
int main_entry(int argc, const char *const *argv);

} // namespace vilenkin::cli
