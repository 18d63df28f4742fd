#include <algorithm>

#include "json.hpp"
#include "lochardy/atoms.hpp"
#include "lochardy/kernels.hpp"

namespace lochardy {

double lp_norm(const Space& space, const FnOnSpace& f, double p) {
  if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1");
  if (f.size() != space.size()) throw Error("lp_norm: size mismatch");
  if (std::isinf(p)) return kernels::max_abs(f.values());
  if (p == 1.0) return kernels::weighted_abs_sum(f.values(), space.masses());
  if (p == 2.0) return std::sqrt(kernels::weighted_sq_dev(f.values(), space.masses(), 0.0));
  return std::pow(kernels::weighted_pow_dev(f.values(), space.masses(), 0.0, p), 1.0 / p);
}

double lp_norm_on(const Space& space, const FnOnSpace& f, double p, const PointSet& on) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (Index x : on) m = std::max(m, std::fabs(f[x]));
    return m;
  }
  double s = 0.0;
  for (Index x : on) s += std::pow(std::fabs(f[x]), p) * space.mass(x);
  return std::pow(s, 1.0 / p);
}

double integral(const Space& space, const FnOnSpace& f) { return kernels::weighted_sum(f.values(), space.masses()); }

AtomCertificate validate_atom(const Space& space, const FnOnSpace& f, const Ball& b, double p, double scale,
                              AtomKind kind) {
  if (f.size() != space.size()) throw Error("validate_atom: size mismatch");
  if (!(p > 1.0)) throw Error("validate_atom: p must lie in (1, inf]");
  AtomCertificate cert;
  for (Index x = 0; x < space.size(); ++x) {
    if (f[x] != 0.0 && !b.contains(x)) cert.support_ok = false;
  }
  if (kind == AtomKind::standard) {
    cert.radius_ok = b.radius <= scale + kTol;
  } else {
    cert.radius_ok = std::fabs(b.radius - scale) <= kTol;
  }
  cert.size_lhs = lp_norm(space, f, p);
  cert.size_rhs = std::pow(b.measure, -inv_conjugate(p));
  cert.size_ok = leq_tol(cert.size_lhs, cert.size_rhs);
  cert.integral = integral(space, f);
  if (kind == AtomKind::standard) {
    cert.cancellation_ok = std::fabs(cert.integral) <= kTol * lp_norm(space, f, 1.0);
  }
  return cert;
}

IonCertificate validate_ion(const Space& space, const FnOnSpace& g, const Ball& b, double p, double alpha) {
  if (g.size() != space.size()) throw Error("validate_ion: size mismatch");
  if (!(p > 1.0)) throw Error("validate_ion: p must lie in (1, inf]");
  if (!(alpha > 0.0)) throw Error("validate_ion: alpha must be positive");
  IonCertificate cert;
  for (Index x = 0; x < space.size(); ++x) {
    if (g[x] != 0.0 && !b.contains(x)) cert.support_ok = false;
  }
  cert.size_lhs = lp_norm(space, g, p);
  cert.size_rhs = std::pow(b.measure, -inv_conjugate(p));
  cert.size_ok = leq_tol(cert.size_lhs, cert.size_rhs);
  cert.integral = integral(space, g);
  cert.integral_bound = std::pow(b.radius, alpha);
  cert.integral_ok = leq_tol(std::fabs(cert.integral), cert.integral_bound);
  return cert;
}

double Decomposition::coefficient_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::fabs(t.lambda);
  return s;
}

FnOnSpace Decomposition::reconstruct() const {
  FnOnSpace out(target.size());
  for (const auto& t : terms) kernels::axpy(out.values(), t.atom.values.values(), t.lambda);
  return out;
}

double Decomposition::max_error() const {
  const FnOnSpace r = reconstruct();
  double e = 0.0;
  for (Index x = 0; x < target.size(); ++x) e = std::max(e, std::fabs(r[x] - target[x]));
  return e;
}

bool Decomposition::atoms_valid(const Space& space) const {
  return std::all_of(terms.begin(), terms.end(),
                     [&](const Term& t) { return validate_atom(space, t.atom).holds(); });
}

std::string decomposition_to_json(const Decomposition& d) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : d.terms) {
    nlohmann::json vals = nlohmann::json::array();
    for (Index x = 0; x < t.atom.values.size(); ++x) {
      if (t.atom.values[x] != 0.0) vals.push_back({x, t.atom.values[x]});
    }
    out.push_back({{"lambda", t.lambda},
                   {"center", t.atom.support.center},
                   {"radius", t.atom.support.radius},
                   {"kind", t.atom.kind == AtomKind::standard ? "standard" : "global"},
                   {"values", vals}});
  }
  return out.dump();
}

}  // namespace lochardy
