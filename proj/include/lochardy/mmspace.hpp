#pragma once

// Finite metric measure spaces: closed balls, doubling constants, the
// approximate midpoint property and greedy eta-discretisations.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lochardy/common.hpp"

namespace lochardy {

/// A distinct closed ball around a fixed centre, described as a prefix of
/// the centre's distance-ordered neighbour list.
struct BallPrefix {
  std::size_t len;  // number of members
  double radius;    // smallest radius realising this member set
};

/// (M, d, mu) on n points. Immutable after construction.
class Space {
 public:
  /// `dist` is row-major n x n. Throws Error on asymmetry, a nonzero
  /// diagonal, a triangle violation (message names the witness triple) or a
  /// nonpositive mass.
  Space(std::vector<double> dist, std::vector<double> mass, double scale_unit = 1.0);

  std::size_t size() const { return n_; }
  double dist(Index i, Index j) const { return dist_[i * n_ + j]; }
  std::span<const double> dist_row(Index i) const { return {dist_.data() + i * n_, n_}; }
  double mass(Index i) const { return mass_[i]; }
  std::span<const double> masses() const { return mass_; }
  double total_mass() const { return total_mass_; }
  double scale_unit() const { return scale_unit_; }
  double diameter() const { return diameter_; }
  /// Smallest nonzero distance; +inf for a single point.
  double min_positive_distance() const { return min_positive_; }

  /// Points sorted by (distance from c, index).
  std::span<const Index> order(Index c) const { return {order_.data() + c * n_, n_}; }
  std::span<const double> sorted_dist(Index c) const { return {sorted_dist_.data() + c * n_, n_}; }
  std::span<const double> sorted_mass(Index c) const { return {sorted_mass_.data() + c * n_, n_}; }
  /// prefix_mass(c)[k] = mass of the k nearest points; size n + 1.
  std::span<const double> prefix_mass(Index c) const {
    return {prefix_mass_.data() + c * (n_ + 1), n_ + 1};
  }
  /// All distinct closed balls centred at c, ascending.
  std::span<const BallPrefix> balls(Index c) const { return balls_[c]; }

  /// Number of points with d(c, x) <= r (closed, tolerant).
  std::size_t closed_count(Index c, double r) const;
  /// Number of points with d(c, x) < r (open, tolerant).
  std::size_t open_count(Index c, double r) const;
  double ball_measure(Index c, double r) const { return prefix_mass(c)[closed_count(c, r)]; }

 private:
  std::size_t n_;
  std::vector<double> dist_;
  std::vector<double> mass_;
  double scale_unit_;
  double total_mass_ = 0.0;
  double diameter_ = 0.0;
  double min_positive_ = kInf;
  std::vector<Index> order_;
  std::vector<double> sorted_dist_;
  std::vector<double> sorted_mass_;
  std::vector<double> prefix_mass_;
  std::vector<std::vector<BallPrefix>> balls_;
};

/// Closed ball {x : d(center, x) <= radius}.
struct Ball {
  Index center = 0;
  double radius = 0.0;
  PointSet members;
  double measure = 0.0;

  bool contains(Index x) const;
};

Ball ball(const Space& space, Index center, double radius);

struct DoublingReport {
  double tau = 1.0;
  double s = 0.0;
  double value = 1.0;
  /// Witness pair small ⊂ large. When `radius_is_limit` is set the small
  /// ball's radius may be taken arbitrarily close to `small.radius` from
  /// below, and `large` is the open ball of radius tau * small.radius.
  std::optional<Ball> small;
  std::optional<Ball> large;
  bool radius_is_limit = false;
};

/// Smallest C with mu(B') <= C mu(B) for all balls B ⊂ B' with r_B <= s and
/// r_B' <= tau r_B, radii ranging over all positive reals.
DoublingReport doubling_constant(const Space& space, double tau, double s);

struct MidpointReport {
  bool holds = true;
  std::optional<std::pair<Index, Index>> violation;
};

/// For every pair with d(x,y) > R0 look for z with d(x,z), d(y,z) < beta d(x,y).
MidpointReport check_midpoint(const Space& space, double beta, double r0);

/// Maximal eta-separated set.
struct Net {
  double eta = 0.0;
  std::vector<Index> centers;
  /// mult_point[x] = #{z in centers : d(z, x) <= 2 eta}.
  std::vector<std::size_t> mult_point;

  /// #{z in centers : B_{2 eta}(z) meets B}.
  std::size_t mult_ball(const Space& space, const Ball& b) const;
};

/// Greedy insertion in ascending index order.
Net build_net(const Space& space, double eta);
/// Greedy insertion seeded with `seed` (which must itself be eta-separated).
Net build_net_seeded(const Space& space, double eta, std::span<const Index> seed);

struct CoveringReport {
  std::vector<std::size_t> mult_point;
  std::size_t max_mult = 0;
  double bound = 1.0;  // D_{12, c/4}
  bool holds = true;
};

/// Multiplicity of the cover {B_c(z)} for a c/2-discretisation, against D_{12,c/4}.
CoveringReport covering_multiplicity(const Space& space, const Net& net, double c);

struct BallCountReport {
  double b = 0.0;
  std::size_t max_count = 0;
  Index argmax_center = 0;
  double bound = 1.0;  // D_{4(b/c)+8, c/4} * D_{12, c/4}
  bool holds = true;
};

/// max over centres x of #M_{B(x,b)} against D_{4(b/c)+8, c/4} D_{12, c/4}.
BallCountReport covering_ball_count(const Space& space, const Net& net, double c, double b);

}  // namespace lochardy
