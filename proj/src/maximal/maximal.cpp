#include <algorithm>
#include <numeric>

#include "lochardy/kernels.hpp"
#include "lochardy/maximal.hpp"

namespace lochardy {

namespace {

// f gathered in the distance order of a centre, with running sums.
struct Gathered {
  std::vector<double> v;
  std::vector<double> sum;      // sum[k] = sum_{i<k} w_i v_i
  std::vector<double> abs_sum;  // abs_sum[k] = sum_{i<k} w_i |v_i|
};

Gathered gather(const Space& space, const FnOnSpace& f, Index c) {
  const std::size_t n = space.size();
  const auto ord = space.order(c);
  const auto w = space.sorted_mass(c);
  Gathered g;
  g.v.resize(n);
  g.sum.assign(n + 1, 0.0);
  g.abs_sum.assign(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    g.v[k] = f[ord[k]];
    g.sum[k + 1] = g.sum[k] + w[k] * g.v[k];
    g.abs_sum[k + 1] = g.abs_sum[k] + w[k] * std::fabs(g.v[k]);
  }
  return g;
}

void check_args(const Space& space, const FnOnSpace& f, const char* who) {
  if (f.size() != space.size()) throw Error(std::string(who) + ": size mismatch");
}

double root_q(double s, double q) { return q == 1.0 ? s : std::pow(std::max(s, 0.0), 1.0 / q); }

}  // namespace

FnOnSpace hl_maximal_local(const Space& space, const FnOnSpace& f) {
  check_args(space, f, "hl_maximal_local");
  FnOnSpace out(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    const Gathered g = gather(space, f, x);
    const auto pm = space.prefix_mass(x);
    double best = 0.0;
    for (const BallPrefix& bp : space.balls(x)) {
      if (bp.radius > space.scale_unit() + kTol) break;
      best = std::max(best, g.abs_sum[bp.len] / pm[bp.len]);
    }
    out[x] = best;
  }
  return out;
}

FnOnSpace sharp_maximal(const Space& space, const FnOnSpace& f, double b, double q) {
  check_args(space, f, "sharp_maximal");
  if (!(b > 0.0)) throw Error("sharp_maximal: b must be positive");
  if (!(q >= 1.0)) throw Error("sharp_maximal: q must be >= 1");
  FnOnSpace out(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    const Gathered g = gather(space, f, x);
    const auto pm = space.prefix_mass(x);
    const auto w = space.sorted_mass(x);
    double best = 0.0;
    for (const BallPrefix& bp : space.balls(x)) {
      if (bp.radius > b + kTol) break;
      const double mean = g.sum[bp.len] / pm[bp.len];
      const std::span<const double> v(g.v.data(), bp.len);
      best = std::max(best, kernels::weighted_pow_dev(v, w.first(bp.len), mean, q) / pm[bp.len]);
    }
    out[x] = root_q(best, q);
  }
  return out;
}

FnOnSpace ball_average(const Space& space, const FnOnSpace& f, double b, double q) {
  check_args(space, f, "ball_average");
  if (!(q >= 1.0)) throw Error("ball_average: q must be >= 1");
  FnOnSpace out(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    const std::size_t len = space.closed_count(x, b);
    const auto ord = space.order(x);
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += space.mass(ord[k]) * std::pow(std::fabs(f[ord[k]]), q);
    out[x] = root_q(s / space.prefix_mass(x)[len], q);
  }
  return out;
}

FnOnSpace n0(const Space& space, const FnOnSpace& f, double b) {
  check_args(space, f, "n0");
  FnOnSpace out(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    const std::size_t len = space.closed_count(x, b);
    out[x] = gather(space, f, x).abs_sum[len] / space.prefix_mass(x)[len];
  }
  return out;
}

FnOnSpace n0(const Space& space, const FnOnSpace& f) { return n0(space, f, space.scale_unit()); }

FnOnSpace n_operator(const Space& space, const FnOnSpace& f) {
  return sharp_maximal(space, f, space.scale_unit(), 1.0) + n0(space, f);
}

FnOnSpace n_operator_q(const Space& space, const FnOnSpace& f, double b, double q) {
  return sharp_maximal(space, f, b, q) + ball_average(space, f, b, q);
}

BestConstant best_constant(std::span<const double> v, std::span<const double> w, double q) {
  BestConstant out;
  if (v.empty()) return out;
  if (q == 1.0) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    double total = 0.0;
    for (double x : w) total += x;
    double acc = 0.0;
    for (std::size_t i : idx) {
      acc += w[i];
      if (acc >= 0.5 * total) {
        out.c = v[i];
        break;
      }
    }
    out.value = kernels::weighted_abs_dev(v, w, out.c);
    return out;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double mean = kernels::weighted_sum(v, w) / total;
  out.c = mean;
  out.value = kernels::weighted_pow_dev(v, w, mean, q);
  if (q == 2.0) return out;
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  auto obj = [&](double c) { return kernels::weighted_pow_dev(v, w, c, q); };
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = obj(x1), f2 = obj(x2);
  while (hi - lo > 1e-10 * std::max(1.0, std::fabs(hi) + std::fabs(lo))) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = obj(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = obj(x2);
    }
  }
  const double c = 0.5 * (lo + hi);
  const double val = obj(c);
  if (val < out.value) {
    out.c = c;
    out.value = val;
  }
  return out;
}

FnOnSpace s_sharp(const Space& space, const FnOnSpace& f, double q, double b) {
  check_args(space, f, "s_sharp");
  if (!(q >= 1.0)) throw Error("s_sharp: q must be >= 1");
  FnOnSpace out(space.size());
  for (Index x = 0; x < space.size(); ++x) {
    const Gathered g = gather(space, f, x);
    const auto pm = space.prefix_mass(x);
    const auto w = space.sorted_mass(x);
    double best = 0.0;
    for (const BallPrefix& bp : space.balls(x)) {
      if (bp.radius > b + kTol) break;
      const BestConstant bc = best_constant({g.v.data(), bp.len}, w.first(bp.len), q);
      best = std::max(best, bc.value / pm[bp.len]);
    }
    out[x] = root_q(best, q);
  }
  return out;
}

}  // namespace lochardy
