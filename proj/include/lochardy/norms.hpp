#pragma once

// bmo norms and the atomic h^1 gauge at unit scale. The gauge is the
// minimum of sum lambda over decompositions into atoms; it is computed by
// column generation over the atom polytopes, whose pricing problem is the
// dual constraint "sup over atoms of <a, g> <= 1".

#include "lochardy/atoms.hpp"
#include "lochardy/lp.hpp"

namespace lochardy {

struct BmoReport {
  double q = 1.0;
  double b = 1.0;
  double norm = 0.0;  // max_x N^q_b f(x)
  Index argmax = 0;
  FnOnSpace values;   // N^q_b f
};

BmoReport bmo_norm(const Space& space, const FnOnSpace& f, double q, double b);

/// sup over p-atoms a at scale_unit of <a, g>, together with a maximiser.
/// Exact for p = inf; for finite p the inner constant is found by golden
/// section.
struct PairingSup {
  double value = 0.0;
  Atom atom;
};
PairingSup atom_pairing_sup(const Space& space, const FnOnSpace& g, double p = kInf);

struct GaugeResult {
  double p = kInf;
  double value = 0.0;       // sum of lambda of the optimal decomposition
  double lower = 0.0;       // <f, g> / max(1, sup_a <a, g>)
  double max_pairing = 0.0; // sup_a <a, g> for the final dual g
  FnOnSpace g;              // final dual vector
  Decomposition decomposition;
  std::size_t rounds = 0;
  std::size_t pivots = 0;
  bool converged = false;
  double gap() const { return value - lower; }
};

/// Atomic h^{1,p} gauge at scale_unit: min sum |lambda_j| with f = sum lambda_j a_j.
GaugeResult h1_gauge(const Space& space, const FnOnSpace& f, double p = kInf);

/// The h^1 norm through the inf-atom gauge.
double h1_norm_dual(const Space& space, const FnOnSpace& f);

/// The dual problem written out in full: maximise <f, g> subject to one
/// oscillation constraint per distinct ball of radius <= scale_unit (with a
/// free constant c_B and t_x >= |g(x) - c_B|) and one average constraint per
/// ball B(x, scale_unit). Intended for small spaces and for text dumps.
LpProblem h1_dual_lp(const Space& space, const FnOnSpace& f);

/// Pairing-level check of the duality constants for a fixed g:
/// rho = sup_a <a, g> over p-atoms and the bmo^{p'} norm at scale_unit.
struct DualityCheck {
  double p = kInf;
  double rho = 0.0;
  double bmo = 0.0;
  bool upper_ok = false;  // rho <= 4 bmo
  bool lower_ok = false;  // bmo <= 3 rho
  bool holds() const { return upper_ok && lower_ok; }
};
DualityCheck duality_constants(const Space& space, const FnOnSpace& g, double p = kInf);

struct H1Report {
  double dual_value = 0.0;    // L(f), the gauge
  double dual_lower = 0.0;    // certified lower bound on L(f)
  double primal_upper = 0.0;  // U(f) from greedy_atomic_decomposition
  bool sandwich_ok = false;   // L <= 4 U and U finite
  double ratio() const { return dual_value > 0.0 ? primal_upper / dual_value : 1.0; }
  GaugeResult gauge;
  Decomposition greedy;
};

H1Report duality_sandwich(const Space& space, const FnOnSpace& f);

}  // namespace lochardy
