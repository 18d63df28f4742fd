#pragma once

// Dense linear programming: a two-phase tableau simplex with Dantzig pricing
// and a Bland fallback on degenerate stalls.

#include <string>
#include <vector>

#include "lochardy/common.hpp"

namespace lochardy {

enum class RowSense { le, ge, eq };

struct LpProblem {
  bool maximize = false;
  std::vector<double> objective;          // one entry per variable
  std::vector<std::vector<double>> rows;  // dense, each of objective.size()
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<double> lower;  // -kInf for free below; defaults to 0 when empty
  std::vector<double> upper;  // kInf for unbounded above; defaults to kInf when empty
  std::vector<std::string> names;  // optional, used by the text dump

  std::size_t num_vars() const { return objective.size(); }
  std::size_t add_var(double cost, double lo = 0.0, double hi = kInf, std::string name = {});
  void add_row(std::vector<double> row, RowSense sense, double b);
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

std::string lp_status_name(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> row_duals;   // d objective / d rhs at the optimum
  double primal_violation = 0.0;   // max row or bound violation of x
  double dual_violation = 0.0;     // most negative reduced cost at termination
  std::size_t iterations = 0;
  std::size_t bland_pivots = 0;
  bool certified() const { return status == LpStatus::optimal && primal_violation <= 1e-7 && dual_violation <= 1e-7; }
};

LpResult lp_solve(const LpProblem& prob, std::size_t max_iterations = 200000);

/// CPLEX LP text format, for cross-checking with external solvers.
std::string lp_to_cplex(const LpProblem& prob);

}  // namespace lochardy
