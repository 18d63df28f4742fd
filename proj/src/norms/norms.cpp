#include <algorithm>
#include <set>

#include "lochardy/maximal.hpp"
#include "lochardy/norms.hpp"
#include "pairing.hpp"

namespace lochardy {

BmoReport bmo_norm(const Space& space, const FnOnSpace& f, double q, double b) {
  if (!(q >= 1.0)) throw Error("bmo_norm: q must be >= 1");
  if (!(b > 0.0)) throw Error("bmo_norm: b must be positive");
  BmoReport r;
  r.q = q;
  r.b = b;
  r.values = n_operator_q(space, f, b, q);
  for (Index x = 0; x < space.size(); ++x) {
    if (r.values[x] > r.norm) {
      r.norm = r.values[x];
      r.argmax = x;
    }
  }
  return r;
}

PairingSup atom_pairing_sup(const Space& space, const FnOnSpace& g, double p) {
  detail::Candidate c = detail::pairing_candidates(space, g, p, kInf, nullptr);
  return PairingSup{c.value, std::move(c.atom)};
}

LpProblem h1_dual_lp(const Space& space, const FnOnSpace& f) {
  if (f.size() != space.size()) throw Error("h1_dual_lp: size mismatch");
  const std::size_t n = space.size();
  const double unit = space.scale_unit();
  LpProblem lp;
  lp.maximize = true;
  for (Index x = 0; x < n; ++x) lp.add_var(f[x] * space.mass(x), -kInf, kInf, "g" + std::to_string(x));

  std::set<PointSet> seen;
  std::size_t nb = 0;
  for (Index c = 0; c < n; ++c) {
    for (const BallPrefix& bp : space.balls(c)) {
      if (bp.radius > unit + kTol) break;
      if (bp.len < 2) continue;
      Ball b = ball(space, c, bp.radius);
      if (!seen.insert(b.members).second) continue;
      const std::string tag = std::to_string(nb++);
      const std::size_t cb = lp.add_var(0.0, -kInf, kInf, "c" + tag);
      std::vector<double> sum_row;
      for (Index x : b.members) {
        const std::size_t t = lp.add_var(0.0, 0.0, kInf, "t" + tag + "_" + std::to_string(x));
        std::vector<double> r1(lp.num_vars(), 0.0), r2(lp.num_vars(), 0.0);
        r1[t] = 1.0;  // t - g + c >= 0
        r1[x] = -1.0;
        r1[cb] = 1.0;
        r2[t] = 1.0;  // t + g - c >= 0
        r2[x] = 1.0;
        r2[cb] = -1.0;
        lp.add_row(std::move(r1), RowSense::ge, 0.0);
        lp.add_row(std::move(r2), RowSense::ge, 0.0);
        sum_row.resize(lp.num_vars(), 0.0);
        sum_row[t] = space.mass(x);
      }
      lp.add_row(std::move(sum_row), RowSense::le, b.measure);
    }
  }
  std::vector<std::size_t> s(n);
  for (Index x = 0; x < n; ++x) {
    s[x] = lp.add_var(0.0, 0.0, kInf, "s" + std::to_string(x));
    std::vector<double> r1(lp.num_vars(), 0.0), r2(lp.num_vars(), 0.0);
    r1[s[x]] = 1.0;
    r1[x] = -1.0;
    r2[s[x]] = 1.0;
    r2[x] = 1.0;
    lp.add_row(std::move(r1), RowSense::ge, 0.0);
    lp.add_row(std::move(r2), RowSense::ge, 0.0);
  }
  for (Index x = 0; x < n; ++x) {
    const Ball b = ball(space, x, unit);
    std::vector<double> row(lp.num_vars(), 0.0);
    for (Index y : b.members) row[s[y]] = space.mass(y);
    lp.add_row(std::move(row), RowSense::le, b.measure);
  }
  return lp;
}

DualityCheck duality_constants(const Space& space, const FnOnSpace& g, double p) {
  DualityCheck d;
  d.p = p;
  d.rho = atom_pairing_sup(space, g, p).value;
  d.bmo = bmo_norm(space, g, conjugate_exponent(p), space.scale_unit()).norm;
  d.upper_ok = leq_tol(d.rho, 4.0 * d.bmo);
  d.lower_ok = leq_tol(d.bmo, 3.0 * d.rho);
  return d;
}

H1Report duality_sandwich(const Space& space, const FnOnSpace& f) {
  H1Report r;
  r.gauge = h1_gauge(space, f, kInf);
  r.dual_value = r.gauge.value;
  r.dual_lower = r.gauge.lower;
  r.greedy = greedy_atomic_decomposition(space, f, kInf);
  r.primal_upper = r.greedy.coefficient_sum();
  r.sandwich_ok = std::isfinite(r.primal_upper) && leq_tol(r.dual_value, 4.0 * r.primal_upper, 1e-8);
  return r;
}

}  // namespace lochardy
