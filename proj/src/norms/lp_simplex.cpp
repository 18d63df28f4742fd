#include <algorithm>
#include <sstream>

#include "lochardy/lp.hpp"

namespace lochardy {

std::size_t LpProblem::add_var(double cost, double lo, double hi, std::string name) {
  if (lower.size() < objective.size()) lower.resize(objective.size(), 0.0);
  if (upper.size() < objective.size()) upper.resize(objective.size(), kInf);
  if (names.size() < objective.size()) names.resize(objective.size());
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  names.push_back(std::move(name));
  for (auto& r : rows) r.push_back(0.0);
  return objective.size() - 1;
}

void LpProblem::add_row(std::vector<double> row, RowSense sense, double b) {
  row.resize(objective.size(), 0.0);
  rows.push_back(std::move(row));
  senses.push_back(sense);
  rhs.push_back(b);
}

std::string lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr std::size_t kStallLimit = 50;

// x_j = offset + sign * u_pos - u_neg (u_neg only for free variables).
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  std::ptrdiff_t pos = -1;
  std::ptrdiff_t neg = -1;
};

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols) : m_(m), cols_(cols), t_((m + 1) * (cols + 1), 0.0), basis_(m) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double& cost(std::size_t j) { return at(m_, j); }
  std::size_t m() const { return m_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t q) {
    const double inv = 1.0 / at(r, q);
    double* pr = &at(r, 0);
    for (std::size_t j = 0; j <= cols_; ++j) pr[j] *= inv;
    pr[q] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* pi = &at(i, 0);
      const double f = pi[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) pi[j] -= f * pr[j];
      pi[q] = 0.0;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs(i) < 0.0 && rhs(i) > -1e-11) rhs(i) = 0.0;
    }
    basis_[r] = q;
  }

  // Returns false on unboundedness.
  bool run(const std::vector<char>& allowed, std::size_t& iters, std::size_t max_iters, std::size_t& bland_pivots,
           bool& hit_limit) {
    std::size_t stall = 0;
    bool bland = false;
    while (true) {
      if (iters >= max_iters) {
        hit_limit = true;
        return true;
      }
      std::ptrdiff_t q = -1;
      double best = -kCostTol;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allowed[j]) continue;
        const double d = cost(j);
        if (d < best) {
          q = static_cast<std::ptrdiff_t>(j);
          if (bland) break;
          best = d;
        }
      }
      if (q < 0) return true;
      const auto qc = static_cast<std::size_t>(q);
      std::ptrdiff_t r = -1;
      double best_ratio = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, qc);
        if (a <= kPivotTol) continue;
        const double ratio = rhs(i) / a;
        if (r < 0 || ratio < best_ratio - 1e-12 * (1.0 + std::fabs(best_ratio))) {
          r = static_cast<std::ptrdiff_t>(i);
          best_ratio = ratio;
          continue;
        }
        if (ratio <= best_ratio + 1e-12 * (1.0 + std::fabs(best_ratio))) {
          const auto rc = static_cast<std::size_t>(r);
          const bool take = bland ? basis_[i] < basis_[rc] : a > at(rc, qc);
          if (take) {
            r = static_cast<std::ptrdiff_t>(i);
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (r < 0) return false;
      if (best_ratio <= 1e-12) {
        if (++stall > kStallLimit) bland = true;
      } else {
        stall = 0;
      }
      if (bland) ++bland_pivots;
      pivot(static_cast<std::size_t>(r), qc);
      ++iters;
    }
  }

 private:
  std::size_t m_, cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

void check_problem(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  if (p.rows.size() != p.senses.size() || p.rows.size() != p.rhs.size()) throw Error("lp_solve: row arrays disagree");
  for (const auto& r : p.rows) {
    if (r.size() != n) throw Error("lp_solve: row width mismatch");
    for (double v : r) {
      if (!std::isfinite(v)) throw Error("lp_solve: non-finite coefficient");
    }
  }
  for (double v : p.objective) {
    if (!std::isfinite(v)) throw Error("lp_solve: non-finite objective");
  }
  for (double v : p.rhs) {
    if (!std::isfinite(v)) throw Error("lp_solve: non-finite right-hand side");
  }
  if (!p.lower.empty() && p.lower.size() != n) throw Error("lp_solve: lower bound size mismatch");
  if (!p.upper.empty() && p.upper.size() != n) throw Error("lp_solve: upper bound size mismatch");
}

}  // namespace

LpResult lp_solve(const LpProblem& prob, std::size_t max_iterations) {
  check_problem(prob);
  const std::size_t n = prob.num_vars();
  auto lo = [&](std::size_t j) { return prob.lower.empty() ? 0.0 : prob.lower[j]; };
  auto hi = [&](std::size_t j) { return prob.upper.empty() ? kInf : prob.upper[j]; };

  // Nonnegative substitution variables.
  std::vector<VarMap> vm(n);
  std::size_t nu = 0;
  std::vector<std::pair<std::size_t, double>> ub_rows;  // (u index, bound)
  for (std::size_t j = 0; j < n; ++j) {
    const double l = lo(j), h = hi(j);
    if (l > h) {
      LpResult res;
      res.status = LpStatus::infeasible;
      return res;
    }
    if (std::isfinite(l)) {
      vm[j] = {l, 1.0, static_cast<std::ptrdiff_t>(nu++), -1};
      if (std::isfinite(h)) ub_rows.emplace_back(static_cast<std::size_t>(vm[j].pos), h - l);
    } else if (std::isfinite(h)) {
      vm[j] = {h, -1.0, static_cast<std::ptrdiff_t>(nu++), -1};
    } else {
      vm[j].pos = static_cast<std::ptrdiff_t>(nu++);
      vm[j].neg = static_cast<std::ptrdiff_t>(nu++);
    }
  }

  struct StdRow {
    std::vector<double> a;
    RowSense sense;
    double b;
    double flip = 1.0;
  };
  std::vector<StdRow> srows;
  for (std::size_t i = 0; i < prob.rows.size(); ++i) {
    StdRow r{std::vector<double>(nu, 0.0), prob.senses[i], prob.rhs[i]};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = prob.rows[i][j];
      if (a == 0.0) continue;
      r.b -= a * vm[j].offset;
      r.a[static_cast<std::size_t>(vm[j].pos)] += a * vm[j].sign;
      if (vm[j].neg >= 0) r.a[static_cast<std::size_t>(vm[j].neg)] -= a;
    }
    srows.push_back(std::move(r));
  }
  for (auto [u, bound] : ub_rows) {
    StdRow r{std::vector<double>(nu, 0.0), RowSense::le, bound};
    r.a[u] = 1.0;
    srows.push_back(std::move(r));
  }
  for (auto& r : srows) {
    if (r.b < 0.0) {
      r.flip = -1.0;
      r.b = -r.b;
      for (double& v : r.a) v = -v;
      if (r.sense == RowSense::le) {
        r.sense = RowSense::ge;
      } else if (r.sense == RowSense::ge) {
        r.sense = RowSense::le;
      }
    }
  }

  const std::size_t m = srows.size();
  std::size_t cols = nu;
  std::vector<std::size_t> aux(m), surplus(m, SIZE_MAX);
  std::vector<char> artificial;
  for (std::size_t i = 0; i < m; ++i) {
    if (srows[i].sense == RowSense::ge) surplus[i] = cols++;
    aux[i] = cols++;
  }
  artificial.assign(cols, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (srows[i].sense != RowSense::le) artificial[aux[i]] = 1;
  }

  Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nu; ++j) tab.at(i, j) = srows[i].a[j];
    if (surplus[i] != SIZE_MAX) tab.at(i, surplus[i]) = -1.0;
    tab.at(i, aux[i]) = 1.0;
    tab.rhs(i) = srows[i].b;
    tab.basis()[i] = aux[i];
  }

  // Standard-form objective (minimisation) over the u variables.
  std::vector<double> cost(cols, 0.0);
  const double osign = prob.maximize ? -1.0 : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = osign * prob.objective[j];
    cost[static_cast<std::size_t>(vm[j].pos)] += c * vm[j].sign;
    if (vm[j].neg >= 0) cost[static_cast<std::size_t>(vm[j].neg)] -= c;
  }

  LpResult res;
  bool limit = false;
  std::vector<char> allowed(cols, 1);

  // Phase 1.
  const bool need_phase1 = std::any_of(artificial.begin(), artificial.end(), [](char a) { return a != 0; });
  if (need_phase1) {
    for (std::size_t j = 0; j <= cols; ++j) {
      double d = (j < cols && artificial[j]) ? 1.0 : 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (artificial[tab.basis()[i]]) d -= tab.at(i, j);
      }
      tab.at(m, j) = d;
    }
    tab.run(allowed, res.iterations, max_iterations, res.bland_pivots, limit);
    if (limit) {
      res.status = LpStatus::iteration_limit;
      return res;
    }
    double infeas = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      scale = std::max(scale, srows[i].b);
      if (artificial[tab.basis()[i]]) infeas += tab.rhs(i);
    }
    if (infeas > 1e-9 * scale) {
      res.status = LpStatus::infeasible;
      return res;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (!artificial[tab.basis()[i]]) continue;
      std::size_t best = SIZE_MAX;
      double mag = kPivotTol;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!artificial[j] && std::fabs(tab.at(i, j)) > mag) {
          mag = std::fabs(tab.at(i, j));
          best = j;
        }
      }
      if (best != SIZE_MAX) tab.pivot(i, best);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (artificial[j]) allowed[j] = 0;
    }
  }

  // Phase 2.
  for (std::size_t j = 0; j <= cols; ++j) {
    double d = j < cols ? cost[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) d -= cost[tab.basis()[i]] * tab.at(i, j);
    tab.at(m, j) = d;
  }
  if (!tab.run(allowed, res.iterations, max_iterations, res.bland_pivots, limit)) {
    res.status = LpStatus::unbounded;
    return res;
  }
  if (limit) {
    res.status = LpStatus::iteration_limit;
    return res;
  }

  std::vector<double> u(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) u[tab.basis()[i]] = tab.rhs(i);
  res.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = vm[j].offset + vm[j].sign * u[static_cast<std::size_t>(vm[j].pos)];
    if (vm[j].neg >= 0) v -= u[static_cast<std::size_t>(vm[j].neg)];
    res.x[j] = v;
  }
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += prob.objective[j] * res.x[j];

  res.row_duals.assign(prob.rows.size(), 0.0);
  for (std::size_t i = 0; i < prob.rows.size(); ++i) {
    // Reduced cost of the +1 auxiliary column is -pi_i.
    res.row_duals[i] = -tab.cost(aux[i]) * srows[i].flip * osign;
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (allowed[j]) res.dual_violation = std::max(res.dual_violation, -tab.cost(j));
  }
  for (std::size_t i = 0; i < prob.rows.size(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += prob.rows[i][j] * res.x[j];
    const double diff = ax - prob.rhs[i];
    double viol = 0.0;
    if (prob.senses[i] == RowSense::le) viol = std::max(0.0, diff);
    if (prob.senses[i] == RowSense::ge) viol = std::max(0.0, -diff);
    if (prob.senses[i] == RowSense::eq) viol = std::fabs(diff);
    res.primal_violation = std::max(res.primal_violation, viol);
  }
  for (std::size_t j = 0; j < n; ++j) {
    res.primal_violation = std::max({res.primal_violation, lo(j) - res.x[j], res.x[j] - hi(j)});
  }
  res.status = LpStatus::optimal;
  return res;
}

std::string lp_to_cplex(const LpProblem& prob) {
  check_problem(prob);
  const std::size_t n = prob.num_vars();
  auto name = [&](std::size_t j) {
    if (j < prob.names.size() && !prob.names[j].empty()) return prob.names[j];
    return "x" + std::to_string(j);
  };
  auto term_list = [&](std::ostringstream& os, const std::vector<double>& coef) {
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (coef[j] == 0.0) continue;
      os << (coef[j] < 0.0 ? " - " : (first ? " " : " + ")) << std::fabs(coef[j]) << ' ' << name(j);
      first = false;
    }
    if (first) os << " 0 " << name(0);
  };
  std::ostringstream os;
  os.precision(17);
  os << (prob.maximize ? "Maximize\n obj:" : "Minimize\n obj:");
  term_list(os, prob.objective);
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < prob.rows.size(); ++i) {
    os << " c" << i << ':';
    term_list(os, prob.rows[i]);
    os << (prob.senses[i] == RowSense::le ? " <= " : prob.senses[i] == RowSense::ge ? " >= " : " = ") << prob.rhs[i]
       << '\n';
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < n; ++j) {
    const double l = prob.lower.empty() ? 0.0 : prob.lower[j];
    const double h = prob.upper.empty() ? kInf : prob.upper[j];
    if (std::isinf(l) && std::isinf(h)) {
      os << ' ' << name(j) << " free\n";
    } else if (std::isinf(l)) {
      os << " -inf <= " << name(j) << " <= " << h << '\n';
    } else if (std::isinf(h)) {
      if (l != 0.0) os << ' ' << name(j) << " >= " << l << '\n';
    } else {
      os << ' ' << l << " <= " << name(j) << " <= " << h << '\n';
    }
  }
  os << "End\n";
  return os.str();
}

}  // namespace lochardy
