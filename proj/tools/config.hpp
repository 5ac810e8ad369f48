#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nhsym/operators.hpp"

namespace nhsym::cli {

enum class Task { spectrum, sweep, ep_search, perturbation_report, symmetry_scan, oracle_compare };
std::string to_string(Task t);
Task task_from_string(const std::string& name);  // throws std::invalid_argument

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool refine = true;
};

struct RunConfig {
  std::string path;
  std::string checksum;  // sha256 of the config text
  ModelSpec model;
  int cutoff = 0;
  GridSpec grid;
  std::vector<std::string> irreps;  // subgroup irreps, all when not given
  int states = 10;
  int levels = 15;
  std::vector<Task> tasks;
  std::string output_dir = "nhsym_out";
  double tau_real = 1e-8;
  double convergence_tol = 1e-8;  // relative cutoff+4 shift tolerated by sweeps
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

RunConfig parse_config(const std::string& text, const std::string& path = "<config>");
RunConfig load_config(const std::string& path);
std::string sha256_hex(const std::string& data);

}  // namespace nhsym::cli
