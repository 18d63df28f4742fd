#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lochardy/dyadic.hpp"
#include "lochardy/verify.hpp"

namespace lochardy {

/// State for one (check, instance, trial) task; collects rows.
class TrialContext {
 public:
  TrialContext(const ExperimentConfig& cfg, const Space& space, std::string check, std::string instance,
               std::size_t trial);

  /// i-th member of the trial's function family; the same for every check
  /// that asks for it under this seed.
  FnOnSpace function(std::size_t i) const;
  const CubeSystem& cubes();

  void exact(std::string item, double lhs, double rhs, double constant = 1.0, bool extra = true);
  void recorded(std::string item, double lhs, double rhs, double constant);
  /// Marks a trial whose preconditions no instance object meets.
  void skip(const std::string& reason) { recorded("skipped: " + reason, 0.0, 0.0, 0.0); }

  const ExperimentConfig& cfg;
  const Space& space;
  std::string check;
  std::string instance;
  std::size_t trial;
  std::mt19937_64 rng;
  std::vector<ReportRow> rows;

 private:
  void push(std::string item, double lhs, double rhs, double constant, RowKind kind, bool extra);
  std::uint64_t fn_seed_ = 0;
  std::unique_ptr<CubeSystem> cubes_;
};

std::string instance_name(const ExperimentConfig& cfg, std::size_t n);

}  // namespace lochardy
