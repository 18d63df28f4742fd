#include "lochardy/sampling.hpp"

namespace lochardy {

namespace {

Index random_point(const Space& space, std::mt19937_64& rng) {
  return std::uniform_int_distribution<Index>(0, space.size() - 1)(rng);
}

// Normal values on b, optionally mean-free, scaled to `fill` times the size limit.
FnOnSpace fill_ball(const Space& space, const Ball& b, double p, bool mean_free, double fill, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  FnOnSpace f(space.size());
  if (mean_free && b.members.size() < 2) return f;
  for (Index x : b.members) f[x] = g(rng);
  if (mean_free) {
    double m = 0.0;
    for (Index x : b.members) m += f[x] * space.mass(x);
    for (Index x : b.members) f[x] -= m / b.measure;
  }
  const double norm = lp_norm(space, f, p);
  if (norm > 0.0) f *= fill * std::pow(b.measure, -inv_conjugate(p)) / norm;
  return f;
}

}  // namespace

FnOnSpace sample_function(const Space& space, FnFamily family, std::mt19937_64& rng) {
  const std::size_t n = space.size();
  FnOnSpace f(n);
  std::normal_distribution<double> g(0.0, 1.0);
  switch (family) {
    case FnFamily::normal:
      for (Index x = 0; x < n; ++x) f[x] = g(rng);
      break;
    case FnFamily::ball_indicator: {
      const Index c = random_point(space, rng);
      const double r = std::uniform_real_distribution<double>(0.0, 1.5 * space.scale_unit())(rng);
      for (Index x : ball(space, c, r).members) f[x] = 1.0;
      break;
    }
    case FnFamily::spike: {
      const Index c = random_point(space, rng);
      double h = g(rng);
      if (h == 0.0) h = 1.0;
      f[c] = h;
      break;
    }
  }
  return f;
}

Atom sample_atom(const Space& space, double scale, double p, AtomKind kind, std::mt19937_64& rng) {
  const Index c = random_point(space, rng);
  const double r = kind == AtomKind::global ? scale : std::uniform_real_distribution<double>(0.0, scale)(rng);
  Ball b = ball(space, c, r);
  const double fill = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
  FnOnSpace v = fill_ball(space, b, p, kind == AtomKind::standard, fill, rng);
  return Atom{std::move(v), std::move(b), p, scale, kind};
}

Ion sample_ion(const Space& space, double b, double p, double alpha, std::mt19937_64& rng) {
  const Index c = random_point(space, rng);
  const double r = rng() % 5 == 0 ? b : std::uniform_real_distribution<double>(0.0, b)(rng);
  Ball support = ball(space, c, r);
  for (int attempt = 0; attempt < 50; ++attempt) {
    FnOnSpace g = fill_ball(space, support, p, true, 0.5, rng);
    const double target = std::uniform_real_distribution<double>(-1.0, 1.0)(rng) * std::pow(support.radius, alpha);
    for (Index x : support.members) g[x] += target / support.measure;
    if (validate_ion(space, g, support, p, alpha).holds()) return Ion{std::move(g), std::move(support), p, alpha};
  }
  return Ion{fill_ball(space, support, p, true, 0.5, rng), std::move(support), p, alpha};
}

}  // namespace lochardy
