#pragma once

// Experiment harness: named checks run over seeded spaces and functions,
// producing CSV rows with a JSON sidecar.

#include <cstdint>
#include <string>
#include <vector>

#include "lochardy/mmspace.hpp"

namespace lochardy {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string family = "cycle";  // cycle | path | random-geometric | grid | file
  std::string space_file;        // read when family == "file"
  std::vector<std::size_t> sizes{6};
  std::size_t trials = 10;
  std::vector<std::string> checks;
  bool random_masses = false;  // masses uniform in [0.5, 2] per trial
  double tolerance = 1e-9;     // relative slack on exact rows
  std::vector<double> q_values{1.0};
  std::vector<double> p_values{1.5, 2.0, 3.0};
  std::size_t functions_per_trial = 20;  // size of the estimation family
  std::size_t atoms_per_trial = 1000;    // sample size for operator-atoms
  std::size_t threads = 0;               // 0: hardware concurrency
  std::string out;                       // CSV path; sidecar is out + ".json"
  bool timing = false;                   // adds runtime-ms (nondeterministic)
};

enum class RowKind { exact, recorded };

struct ReportRow {
  std::string check;
  std::string instance;
  std::size_t trial = 0;
  std::string item;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  RowKind kind = RowKind::exact;
  bool holds = true;
  double runtime_ms = 0.0;
};

struct Report {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::size_t violations() const;  // exact rows that fail
};

/// Every check name accepted by run_checks.
const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);

/// Runs every (check, size, trial) task on a worker pool; rows come back in
/// (check, instance, trial) order regardless of scheduling.
Report run_checks(const ExperimentConfig& config);

/// The space used for a given size and trial (the space file, or a seeded
/// member of the family).
Space experiment_space(const ExperimentConfig& config, std::size_t n, std::size_t trial);

std::string report_csv(const Report& report);
std::string report_sidecar(const Report& report);
void write_report(const Report& report);

/// Structured-text configuration (JSON object with the field names above;
/// "check" may replace "checks" for a single name).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

}  // namespace lochardy
