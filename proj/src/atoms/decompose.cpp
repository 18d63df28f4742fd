#include <algorithm>

#include "lochardy/atoms.hpp"

namespace lochardy {

namespace {

struct Partition {
  std::vector<Term> terms;
  std::size_t multiplicity = 0;
  double cover_measure = 0.0;  // sum of mu(B_j) over all cover balls
};

// f = sum_j f psi_j with psi_j the partition of unity subordinate to the
// radius-c balls of a c/2-net meeting supp f; every piece is a global atom
// at scale c after normalisation.
Partition partition_into_global_atoms(const Space& space, const FnOnSpace& f, double c, double p) {
  const std::size_t n = space.size();
  const Net net = build_net(space, c / 2.0);
  PointSet support;
  for (Index x = 0; x < n; ++x) {
    if (f[x] != 0.0) support.push_back(x);
  }
  Partition part;
  std::vector<Ball> cover;
  for (Index z : net.centers) {
    for (Index x : support) {
      if (space.dist(z, x) <= c + kTol) {
        cover.push_back(ball(space, z, c));
        break;
      }
    }
  }
  std::vector<std::size_t> cnt(n, 0);
  for (const Ball& bj : cover) {
    part.cover_measure += bj.measure;
    for (Index x : bj.members) part.multiplicity = std::max(part.multiplicity, ++cnt[x]);
  }
  const double e = inv_conjugate(p);
  for (Ball& bj : cover) {
    FnOnSpace piece(n);
    for (Index x : bj.members) {
      if (f[x] != 0.0) piece[x] = f[x] / static_cast<double>(cnt[x]);
    }
    const double lambda = lp_norm(space, piece, p) * std::pow(bj.measure, e);
    if (lambda == 0.0) continue;
    piece *= 1.0 / lambda;
    part.terms.push_back(Term{lambda, Atom{std::move(piece), std::move(bj), p, c, AtomKind::global}});
  }
  return part;
}

Term normalised_term(const Space& space, FnOnSpace v, Ball b, double p, double scale, AtomKind kind) {
  const double lambda = lp_norm(space, v, p) * std::pow(b.measure, inv_conjugate(p));
  if (lambda > 0.0) v *= 1.0 / lambda;
  return Term{lambda, Atom{std::move(v), std::move(b), p, scale, kind}};
}

FnOnSpace indicator_average(const Space& space, const Ball& b, double weight) {
  FnOnSpace v(space.size());
  for (Index x : b.members) v[x] = weight / b.measure;
  return v;
}

}  // namespace

bool EconomicalResult::within_bound() const {
  const double sum = decomposition.coefficient_sum();
  return leq_tol(sum, hoelder_bound) && leq_tol(hoelder_bound, instance_bound);
}

EconomicalResult economical_decompose(const Space& space, const Atom& a, double c) {
  if (!validate_atom(space, a).holds()) throw Error("economical_decompose: invalid atom");
  if (!(c > 0.0 && c < a.scale)) throw Error("economical_decompose: need 0 < c < b");
  const double e = inv_conjugate(a.p);
  Partition part = partition_into_global_atoms(space, a.values, c, a.p);

  EconomicalResult res;
  res.decomposition.target = a.values;
  res.decomposition.terms = std::move(part.terms);
  res.multiplicity = part.multiplicity;
  res.hoelder_bound = lp_norm(space, a.values, a.p) * std::pow(part.cover_measure, e);
  const double d12 = doubling_constant(space, 12.0, c / 4.0).value;
  const double grown = ball(space, a.support.center, a.support.radius + 2.0 * c).measure;
  res.instance_bound = std::pow(d12 * grown / a.support.measure, e);
  res.doubling_form = std::pow(d12 * doubling_constant(space, 1.0 + 2.0 * c / a.scale, a.scale).value, e);
  return res;
}

RescaleResult rescale_atom(const Space& space, const Atom& a, double b) {
  if (!validate_atom(space, a).holds()) throw Error("rescale_atom: invalid atom");
  if (!(b >= a.scale)) throw Error("rescale_atom: need b >= c");
  const double e = inv_conjugate(a.p);
  const double ratio = b / a.scale;
  RescaleResult res;
  res.atom = a;
  if (ratio == 1.0) return res;
  res.atom.support = ball(space, a.support.center, ratio * a.support.radius);
  res.atom.scale = b;
  res.coefficient = std::pow(res.atom.support.measure / a.support.measure, e);
  res.atom.values *= 1.0 / res.coefficient;
  res.bound = std::pow(doubling_constant(space, ratio, a.scale).value, e);
  return res;
}

bool IonDecomposition::within_bound() const {
  for (const auto& [lambda, bound] : piece_checks) {
    if (!leq_tol(lambda, bound)) return false;
  }
  return leq_tol(decomposition.coefficient_sum(), constant);
}

IonDecomposition ion_to_atoms(const Space& space, const Ion& g, double b) {
  if (!validate_ion(space, g).holds()) throw Error("ion_to_atoms: invalid ion");
  if (!(g.support.radius <= b + kTol)) throw Error("ion_to_atoms: support radius exceeds b");
  const double p = g.p;
  const double e = inv_conjugate(p);
  const double two_p = std::isinf(p) ? 1.0 : std::pow(2.0, 1.0 / p);
  const Ball& B = g.support;
  const double raw = integral(space, g.values);
  const double I = std::fabs(raw) <= kTol * lp_norm(space, g.values, 1.0) ? 0.0 : raw;

  IonDecomposition res;
  res.decomposition.target = g.values;
  auto push = [&](Term t, double bound) {
    res.piece_checks.emplace_back(std::fabs(t.lambda), bound);
    res.constant += bound;
    if (t.lambda != 0.0) res.decomposition.terms.push_back(std::move(t));
  };

  // Mean-free part.
  FnOnSpace mean_free = g.values;
  for (Index x : B.members) mean_free[x] -= I / B.measure;
  push(normalised_term(space, std::move(mean_free), B, p, b, AtomKind::standard), 1.0 + std::pow(b, g.alpha));
  if (I == 0.0) return res;

  // Single-point supports carry no radius; any radius below the nearest
  // neighbour describes the same ball.
  double r = B.radius;
  if (r <= kTol) {
    double nearest = kInf;
    for (Index x = 0; x < space.size(); ++x) {
      if (x != B.center) nearest = std::min(nearest, space.dist(B.center, x));
    }
    r = std::min(nearest / 2.0, b);
  }
  res.effective_radius = r;

  if (r >= b - kTol) {
    const Ball whole = ball(space, B.center, b);
    push(normalised_term(space, indicator_average(space, whole, I), whole, p, b, AtomKind::global),
         std::pow(b, g.alpha));
    return res;
  }

  const int N = static_cast<int>(std::floor(std::log2(b / r)));
  res.telescope_levels = N;
  std::vector<Ball> dil;
  for (int i = 0; i <= N + 1; ++i) dil.push_back(ball(space, B.center, std::ldexp(r, i)));
  dil[0] = B;
  auto h = [&](int i) {
    FnOnSpace v = indicator_average(space, dil[static_cast<std::size_t>(i - 1)], I);
    for (Index x : dil[static_cast<std::size_t>(i)].members) v[x] -= I / dil[static_cast<std::size_t>(i)].measure;
    return v;
  };

  const double d2 = N >= 1 ? doubling_constant(space, 2.0, b / 2.0).value : 1.0;
  for (int i = 1; i <= N; ++i) {
    push(normalised_term(space, h(i), dil[static_cast<std::size_t>(i)], p, b, AtomKind::standard),
         two_p * std::pow(d2, e) * std::fabs(I));
  }

  // The last two pieces live on 2^{N+1}B ⊂ B(c_B, 2b): global atoms at
  // scale 2b, then split down to scale b.
  const Ball wide = ball(space, B.center, 2.0 * b);
  const FnOnSpace last[2] = {h(N + 1), indicator_average(space, dil[static_cast<std::size_t>(N + 1)], I)};
  const double d22 = doubling_constant(space, 2.0, 2.0 * b).value;
  for (int k = 0; k < 2; ++k) {
    const Term outer = normalised_term(space, last[k], wide, p, 2.0 * b, AtomKind::global);
    if (outer.lambda == 0.0) continue;
    const EconomicalResult inner = economical_decompose(space, outer.atom, b);
    // h_{N+1} is controlled through mu(2^N B), h_{N+2} through mu(2^{N+1} B).
    const double outer_bound =
        k == 0 ? two_p * std::pow(wide.measure / dil[static_cast<std::size_t>(N)].measure, e) * std::fabs(I)
               : std::pow(d22, e) * std::fabs(I);
    res.piece_checks.emplace_back(outer.lambda, outer_bound);
    res.constant += outer_bound * inner.instance_bound;
    for (const Term& t : inner.decomposition.terms) {
      res.decomposition.terms.push_back(Term{outer.lambda * t.lambda, t.atom});
    }
  }
  return res;
}

Decomposition greedy_atomic_decomposition(const Space& space, const FnOnSpace& f, double p) {
  if (f.size() != space.size()) throw Error("greedy_atomic_decomposition: size mismatch");
  const std::size_t n = space.size();
  const double unit = space.scale_unit();
  const double e = inv_conjugate(p);
  Decomposition best;
  best.target = f;
  if (f.is_zero()) return best;

  PointSet support;
  for (Index x = 0; x < n; ++x) {
    if (f[x] != 0.0) support.push_back(x);
  }
  const double norm = lp_norm(space, f, p);
  const bool mean_free = std::fabs(integral(space, f)) <= kTol * lp_norm(space, f, 1.0);
  auto covers = [&](Index c, double r) {
    return std::all_of(support.begin(), support.end(), [&](Index x) { return space.dist(c, x) <= r + kTol; });
  };

  // One atom on one ball.
  double single = kInf;
  Ball single_ball;
  AtomKind single_kind = AtomKind::global;
  for (Index c = 0; c < n; ++c) {
    if (covers(c, unit)) {
      const Ball bc = ball(space, c, unit);
      const double lam = norm * std::pow(bc.measure, e);
      if (lam < single) {
        single = lam;
        single_ball = bc;
        single_kind = AtomKind::global;
      }
    }
    if (!mean_free) continue;
    for (const BallPrefix& bp : space.balls(c)) {
      if (bp.radius > unit + kTol) break;
      if (!covers(c, bp.radius)) continue;
      const double lam = norm * std::pow(space.prefix_mass(c)[bp.len], e);
      if (lam < single) {
        single = lam;
        single_ball = ball(space, c, bp.radius);
        single_kind = AtomKind::standard;
      }
      break;
    }
  }

  // Partition of unity over a unit-scale net.
  Partition part = partition_into_global_atoms(space, f, unit, p);
  double part_sum = 0.0;
  for (const auto& t : part.terms) part_sum += t.lambda;

  // One spike per point.
  double spike_sum = 0.0;
  for (Index x : support) {
    spike_sum += std::fabs(f[x]) * (std::isinf(p) ? 1.0 : std::pow(space.mass(x), 1.0 / p)) *
                 std::pow(ball(space, x, unit).measure, e);
  }

  if (single <= part_sum && single <= spike_sum) {
    best.terms.push_back(normalised_term(space, f, single_ball, p, unit, single_kind));
  } else if (part_sum <= spike_sum) {
    best.terms = std::move(part.terms);
  } else {
    for (Index x : support) {
      FnOnSpace v(n);
      v[x] = f[x];
      best.terms.push_back(normalised_term(space, std::move(v), ball(space, x, unit), p, unit, AtomKind::global));
    }
  }
  return best;
}

}  // namespace lochardy
