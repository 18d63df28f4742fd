#pragma once

// Local maximal operators on the whole space and restricted to a dyadic cube.
// Suprema over radii are maxima over the finitely many distinct closed balls;
// the singleton ball {x} is always included.

#include <vector>

#include "lochardy/dyadic.hpp"

namespace lochardy {

/// Centred local Hardy-Littlewood maximal function, radii <= scale_unit.
FnOnSpace hl_maximal_local(const Space& space, const FnOnSpace& f);

/// f^{#,q}_b(x) = sup over B(x, r), r <= b, of (avg_B |f - f_B|^q)^{1/q}.
FnOnSpace sharp_maximal(const Space& space, const FnOnSpace& f, double b, double q = 1.0);

/// (avg over B(x, b) of |f|^q)^{1/q}.
FnOnSpace ball_average(const Space& space, const FnOnSpace& f, double b, double q = 1.0);

/// N0 f = average of |f| over B_b(x); b defaults to scale_unit.
FnOnSpace n0(const Space& space, const FnOnSpace& f, double b);
FnOnSpace n0(const Space& space, const FnOnSpace& f);

/// N f = f^# + N0 f at the space's unit scale.
FnOnSpace n_operator(const Space& space, const FnOnSpace& f);

/// N^q_b f = f^{#,q}_b + (avg_{B_b(x)} |f|^q)^{1/q}.
FnOnSpace n_operator_q(const Space& space, const FnOnSpace& f, double b, double q);

/// f^{s,q}(x) = sup over B(x, r), r <= b, of inf_c (avg_B |f - c|^q)^{1/q}.
FnOnSpace s_sharp(const Space& space, const FnOnSpace& f, double q, double b);

/// Minimiser of sum w_i |v_i - c|^q over real c (weighted median for q = 1,
/// mean for q = 2, golden section otherwise) and the attained value.
struct BestConstant {
  double c = 0.0;
  double value = 0.0;  // sum w_i |v_i - c|^q
};
BestConstant best_constant(std::span<const double> v, std::span<const double> w, double q);

/// Values of the cube operators at the members of Q, indexed like Q.members.
struct CubeFunction {
  PointSet points;
  std::vector<double> values;
  double at(Index x) const;
};

/// Noncentred M^Q: balls with centre in Q, averages over B ∩ Q, any radius.
CubeFunction cube_maximal(const Space& space, const Cube& q, const FnOnSpace& f);
/// Centred variant restricted to Q.
CubeFunction cube_maximal_centred(const Space& space, const Cube& q, const FnOnSpace& f);
/// Noncentred sharp function f^{#,Q}.
CubeFunction cube_sharp(const Space& space, const Cube& q, const FnOnSpace& f);

/// max over v of v * mu{M^Q g >= v} / ||g||_{L1(Q)} over the family.
double weak_type_constant(const Space& space, const Cube& q, const std::vector<FnOnSpace>& family);

/// f itself, spikes at every member of Q and indicators of a few balls ∩ Q.
std::vector<FnOnSpace> weak_type_family(const Space& space, const Cube& q, const FnOnSpace& f);

struct GoodLambdaRow {
  double lambda = 0.0;
  double e_lambda = 0.0;   // mu(E_lambda)
  double g_measure = 0.0;  // mu(E_{beta lambda} ∩ F_{gamma lambda})
  std::size_t whitney_multiplicity = 0;
};

struct LevelSets {
  double beta = 0.0;
  double gamma = 0.0;
  double c0 = 0.0;       // measured weak-type constant
  double lambda0 = 0.0;  // C0 ||f||_{L1(Q)} / mu(Q)
  double c2k = 0.0;      // C_{2,k}
  std::vector<GoodLambdaRow> rows;
  double a = 0.0;  // smallest A with g_measure <= A (gamma/beta) e_lambda on every row
  bool holds() const;
};

/// Requires beta > 2 C_{2,k}. An empty `grid` selects a geometric grid above
/// lambda0; a nonempty grid must contain some lambda > lambda0.
LevelSets good_lambda_sets(const Space& space, const CubeSystem& sys, CubeRef q, const FnOnSpace& f, double beta,
                           double gamma, std::vector<double> grid = {});

}  // namespace lochardy
