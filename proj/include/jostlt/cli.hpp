#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jostlt/operator.hpp"

namespace jostlt::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kWarnings = 3, kFailure = 1 };

enum class Format { csv, json };

struct ScanSpec {
  double re_min, re_max, im_min, im_max, step;
};

/// Fully parsed command line. Unset optionals take per-command defaults.
struct RunConfig {
  std::string command;
  std::string op_path;

  // jost
  cplx z{0.0};
  std::string method = "backward";
  double tol = 1e-12;

  // spectrum, lt-sum, enclosure
  double rmax = 0.999;
  double search_tol = 1e-10;
  std::vector<double> eps{0.5};

  // steppot, sharpness-sweep
  int n = 0;
  double alpha = 0.5;
  std::optional<double> a;
  bool all_roots = false;
  std::vector<int> n_list;
  std::string summary_path;

  // oracle
  int n_trunc = 0;
  std::optional<ScanSpec> scan;

  std::optional<Format> format;
  std::string output_path;
  unsigned threads = 1;
  bool strict = false;
};

/// Validates `config` and executes it. Data goes to `out` (or to
/// output_path), diagnostics and warnings to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and calls run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jostlt::cli
