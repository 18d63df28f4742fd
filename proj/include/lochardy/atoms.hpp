#pragma once

// Atoms, ions and their finite decompositions.

#include <string>
#include <vector>

#include "lochardy/mmspace.hpp"

namespace lochardy {

/// (sum |f|^p mu)^{1/p}; p = inf gives max |f|.
double lp_norm(const Space& space, const FnOnSpace& f, double p);
/// Restricted to a point set.
double lp_norm_on(const Space& space, const FnOnSpace& f, double p, const PointSet& on);
/// sum f mu
double integral(const Space& space, const FnOnSpace& f);

enum class AtomKind { standard, global };

struct Atom {
  FnOnSpace values;
  Ball support;
  double p = kInf;
  double scale = 1.0;  // b
  AtomKind kind = AtomKind::standard;
};

struct Ion {
  FnOnSpace values;
  Ball support;
  double p = kInf;
  double alpha = 1.0;
};

struct AtomCertificate {
  bool support_ok = true;
  bool radius_ok = true;        // standard: r_B <= b; global: r_B = b
  bool size_ok = true;
  bool cancellation_ok = true;  // vacuous for global atoms
  double size_lhs = 0.0;        // ||a||_p
  double size_rhs = 0.0;        // mu(B)^{-1/p'}
  double integral = 0.0;
  bool holds() const { return support_ok && radius_ok && size_ok && cancellation_ok; }
};

AtomCertificate validate_atom(const Space& space, const FnOnSpace& f, const Ball& b, double p, double scale,
                              AtomKind kind);
inline AtomCertificate validate_atom(const Space& space, const Atom& a) {
  return validate_atom(space, a.values, a.support, a.p, a.scale, a.kind);
}

struct IonCertificate {
  bool support_ok = true;
  bool size_ok = true;
  bool integral_ok = true;  // |int g| <= r_B^alpha
  double size_lhs = 0.0;
  double size_rhs = 0.0;
  double integral = 0.0;
  double integral_bound = 0.0;
  bool holds() const { return support_ok && size_ok && integral_ok; }
};

IonCertificate validate_ion(const Space& space, const FnOnSpace& g, const Ball& b, double p, double alpha);
inline IonCertificate validate_ion(const Space& space, const Ion& g) {
  return validate_ion(space, g.values, g.support, g.p, g.alpha);
}

struct Term {
  double lambda = 0.0;
  Atom atom;
};

struct Decomposition {
  FnOnSpace target;
  std::vector<Term> terms;

  double coefficient_sum() const;
  FnOnSpace reconstruct() const;
  /// max_x |sum lambda_j a_j(x) - target(x)|
  double max_error() const;
  /// Every atom re-validates.
  bool atoms_valid(const Space& space) const;
};

struct EconomicalResult {
  Decomposition decomposition;
  std::size_t multiplicity = 0;  // observed overlap of the radius-c balls
  double hoelder_bound = 0.0;    // ||a||_p (sum mu(B_j))^{1/p'}
  double instance_bound = 0.0;   // (D_{12,c/4} mu(B(c_B, r_B + 2c)) / mu(B))^{1/p'}
  double doubling_form = 0.0;    // (D_{12,c/4} D_{1+2c/b, b})^{1/p'}
  bool within_bound() const;
};

/// Splits a valid atom at scale b into global p-atoms at scale c < b
/// supported on the radius-c balls of a c/2-discretisation.
EconomicalResult economical_decompose(const Space& space, const Atom& a, double c);

struct RescaleResult {
  Atom atom;
  double coefficient = 1.0;  // [mu((b/c)B) / mu(B)]^{1/p'}
  double bound = 1.0;        // D_{b/c, c}^{1/p'}
};

/// a = coefficient * result.atom with result.atom an atom at scale b.
RescaleResult rescale_atom(const Space& space, const Atom& a, double b);

struct IonDecomposition {
  Decomposition decomposition;
  int telescope_levels = -1;  // N, or -1 when no telescoping was needed
  double effective_radius = 0.0;
  /// Per-piece proof bounds and the realised coefficients.
  std::vector<std::pair<double, double>> piece_checks;  // (lambda, bound)
  double constant = 0.0;                                // sum of the piece bounds
  bool within_bound() const;
};

/// g = a + h, a the mean-free part, h telescoped across dyadic dilates of B.
IonDecomposition ion_to_atoms(const Space& space, const Ion& g, double b);

/// A valid decomposition of f into p-atoms at scale scale_unit (not optimal).
Decomposition greedy_atomic_decomposition(const Space& space, const FnOnSpace& f, double p = kInf);

std::string decomposition_to_json(const Decomposition& d);

}  // namespace lochardy
