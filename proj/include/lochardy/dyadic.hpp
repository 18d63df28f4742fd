#pragma once

// Christ-style dyadic cubes on a finite space and Whitney coverings inside a cube.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lochardy/mmspace.hpp"

namespace lochardy {

struct Cube {
  int level = 0;
  Index center = 0;  // z_alpha^k
  PointSet members;
  double measure = 0.0;
};

struct CubeRef {
  int level = 0;
  std::size_t index = 0;
};

/// Nested partitions indexed by resolution k in [k_min, k_max]; a cube of
/// level k has diameter at most a1 delta^k and contains B(z, a0 delta^k).
class CubeSystem {
 public:
  /// No validation beyond shape; use verify_cube_axioms for the contracts.
  CubeSystem(double delta, int k_min, std::vector<std::vector<Cube>> levels, double a0, double a1);

  double delta() const { return delta_; }
  double a0() const { return a0_; }
  double a1() const { return a1_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(levels_.size()) - 1; }
  double scale(int k) const { return std::pow(delta_, k); }

  const std::vector<Cube>& level(int k) const;
  const Cube& cube(CubeRef r) const { return level(r.level).at(r.index); }
  /// Index of the first level-k cube containing x, if any.
  std::optional<std::size_t> cube_of(int k, Index x) const;
  /// The level-(k-1) cube containing the given level-k cube, if unique.
  std::optional<std::size_t> parent(CubeRef r) const;

 private:
  double delta_;
  int k_min_;
  std::vector<std::vector<Cube>> levels_;
  double a0_, a1_;
  std::vector<std::vector<std::optional<std::size_t>>> owner_;  // [level][point]
};

/// Levels from the coarsest k with delta^k >= diameter to the first k with
/// delta^k below the smallest positive distance.
std::pair<int, int> auto_levels(const Space& space, double delta);

/// Nested delta^k-nets (each level seeded with the coarser centres), finest
/// level by nearest-centre assignment (ties to the lower index), coarser
/// cubes as unions along nearest-parent links. a0, a1 are measured.
CubeSystem build_cubes(const Space& space, double delta, int k_min, int k_max);
CubeSystem build_cubes(const Space& space, double delta);

/// Largest inner radius and outer radius of a cube about its centre.
struct CubeRadii {
  double inner = 0.0;  // B(z, inner) ⊂ Q; +inf when Q is the whole space
  double outer = 0.0;  // Q ⊂ B(z, outer)
  double diameter = 0.0;
};
CubeRadii cube_radii(const Space& space, const Cube& q);

struct AxiomRow {
  std::string axiom;  // partition | nesting | unique-parent | diameter | balls
  bool holds = true;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomRow> rows;
  bool all_hold() const {
    for (const auto& r : rows) {
      if (!r.holds) return false;
    }
    return true;
  }
};

AxiomReport verify_cube_axioms(const Space& space, const CubeSystem& sys);

struct CubeBallReport {
  bool equality_branch = false;  // r_B >= a1 delta^k
  double lhs = 0.0;              // mu(B ∩ Q)
  double rhs = 0.0;              // mu(Q), or mu(B) / D_{a1/(a0 delta), delta^nu}
  double constant = 1.0;         // the D used in the lower branch
  bool holds = true;
};

/// Requires c_B in Q. `nu` defaults to the cube's own level.
CubeBallReport cube_ball_bounds(const Space& space, const CubeSystem& sys, CubeRef q, const Ball& b,
                                std::optional<int> nu = std::nullopt);

/// C_{tau,k} = D_{tau, a1 delta^k} * D_{a1/(a0 delta), delta^k}.
double cube_doubling_bound(const Space& space, const CubeSystem& sys, double tau, int k);

struct WhitneyCover {
  PointSet region;                 // E
  std::vector<Ball> balls;         // B_i
  std::vector<PointSet> pieces;    // B_i ∩ Q
  std::size_t multiplicity = 0;    // max over points of #pieces containing it
};

/// E must be a nonempty proper subset of Q. Radii d(x, Q \ E) / 3.
WhitneyCover whitney_cover(const Space& space, const Cube& q, const PointSet& e);

struct WhitneyCheck {
  bool union_ok = true;
  bool touches_complement = true;  // every 3B_i ∩ Q meets Q \ E
  std::size_t multiplicity = 0;
  bool ok() const { return union_ok && touches_complement; }
};
WhitneyCheck verify_whitney(const Space& space, const Cube& q, const WhitneyCover& cover);

std::string cubes_to_json(const CubeSystem& sys);

}  // namespace lochardy
