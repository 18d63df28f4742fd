#include <algorithm>

#include "lochardy/kernels.hpp"
#include "lochardy/maximal.hpp"

namespace lochardy {

namespace {

// Members of Q in the distance order of c, split into groups of equal
// distance; every distinct set B(c, r) ∩ Q is a union of leading groups.
struct CubeOrder {
  std::vector<Index> pts;
  std::vector<double> v, w;
  std::vector<std::size_t> group_end;  // exclusive ends, ascending
  std::vector<std::size_t> group_of;   // per position
};

CubeOrder cube_order(const Space& space, const Cube& q, const FnOnSpace& f, Index c) {
  CubeOrder co;
  const auto ord = space.order(c);
  const auto sd = space.sorted_dist(c);
  double last = -kInf;
  for (std::size_t k = 0; k < ord.size(); ++k) {
    const Index x = ord[k];
    if (!std::binary_search(q.members.begin(), q.members.end(), x)) continue;
    if (!co.pts.empty() && sd[k] > last + kTol) co.group_end.push_back(co.pts.size());
    if (co.pts.empty() || sd[k] > last + kTol) last = sd[k];
    co.pts.push_back(x);
    co.v.push_back(f[x]);
    co.w.push_back(space.mass(x));
    co.group_of.push_back(co.group_end.size());
  }
  co.group_end.push_back(co.pts.size());
  return co;
}

enum class Stat { average, oscillation };

std::vector<double> group_stats(const CubeOrder& co, Stat stat) {
  std::vector<double> out;
  double wsum = 0.0, vsum = 0.0, asum = 0.0;
  std::size_t k = 0;
  for (std::size_t end : co.group_end) {
    for (; k < end; ++k) {
      wsum += co.w[k];
      vsum += co.w[k] * co.v[k];
      asum += co.w[k] * std::fabs(co.v[k]);
    }
    if (stat == Stat::average) {
      out.push_back(asum / wsum);
    } else {
      out.push_back(kernels::weighted_abs_dev({co.v.data(), end}, {co.w.data(), end}, vsum / wsum) / wsum);
    }
  }
  return out;
}

CubeFunction noncentred(const Space& space, const Cube& q, const FnOnSpace& f, Stat stat) {
  if (f.size() != space.size()) throw Error("cube maximal: size mismatch");
  CubeFunction out{q.members, std::vector<double>(q.members.size(), 0.0)};
  for (Index c : q.members) {
    const CubeOrder co = cube_order(space, q, f, c);
    std::vector<double> s = group_stats(co, stat);
    for (std::size_t g = s.size() - 1; g-- > 0;) s[g] = std::max(s[g], s[g + 1]);
    for (std::size_t k = 0; k < co.pts.size(); ++k) {
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(q.members.begin(), q.members.end(), co.pts[k]) - q.members.begin());
      out.values[pos] = std::max(out.values[pos], s[co.group_of[k]]);
    }
  }
  return out;
}

}  // namespace

double CubeFunction::at(Index x) const {
  const auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it == points.end() || *it != x) throw Error("cube function: point outside the cube");
  return values[static_cast<std::size_t>(it - points.begin())];
}

CubeFunction cube_maximal(const Space& space, const Cube& q, const FnOnSpace& f) {
  return noncentred(space, q, f, Stat::average);
}

CubeFunction cube_sharp(const Space& space, const Cube& q, const FnOnSpace& f) {
  return noncentred(space, q, f, Stat::oscillation);
}

CubeFunction cube_maximal_centred(const Space& space, const Cube& q, const FnOnSpace& f) {
  if (f.size() != space.size()) throw Error("cube maximal: size mismatch");
  CubeFunction out{q.members, {}};
  for (Index c : q.members) {
    const auto s = group_stats(cube_order(space, q, f, c), Stat::average);
    out.values.push_back(*std::max_element(s.begin(), s.end()));
  }
  return out;
}

double weak_type_constant(const Space& space, const Cube& q, const std::vector<FnOnSpace>& family) {
  double best = 0.0;
  for (const FnOnSpace& g : family) {
    double l1 = 0.0;
    for (Index x : q.members) l1 += std::fabs(g[x]) * space.mass(x);
    if (l1 == 0.0) continue;
    const CubeFunction m = cube_maximal(space, q, g);
    std::vector<std::pair<double, double>> vm;
    for (std::size_t i = 0; i < m.points.size(); ++i) vm.emplace_back(m.values[i], space.mass(m.points[i]));
    std::sort(vm.begin(), vm.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    double acc = 0.0;
    for (std::size_t i = 0; i < vm.size(); ++i) {
      acc += vm[i].second;
      if (i + 1 < vm.size() && vm[i + 1].first == vm[i].first) continue;
      best = std::max(best, vm[i].first * acc / l1);
    }
  }
  return best;
}

std::vector<FnOnSpace> weak_type_family(const Space& space, const Cube& q, const FnOnSpace& f) {
  std::vector<FnOnSpace> fam{f};
  for (Index x : q.members) {
    FnOnSpace s(space.size());
    s[x] = 1.0;
    fam.push_back(std::move(s));
  }
  for (const BallPrefix& bp : space.balls(q.center)) {
    FnOnSpace ind(space.size());
    for (Index x : ball(space, q.center, bp.radius).members) {
      if (std::binary_search(q.members.begin(), q.members.end(), x)) ind[x] = 1.0;
    }
    fam.push_back(std::move(ind));
  }
  return fam;
}

bool LevelSets::holds() const {
  for (const auto& r : rows) {
    if (!leq_tol(r.g_measure, a * gamma / beta * r.e_lambda)) return false;
  }
  return true;
}

LevelSets good_lambda_sets(const Space& space, const CubeSystem& sys, CubeRef qr, const FnOnSpace& f, double beta,
                           double gamma, std::vector<double> grid) {
  const Cube& q = sys.cube(qr);
  LevelSets ls;
  ls.beta = beta;
  ls.gamma = gamma;
  ls.c2k = cube_doubling_bound(space, sys, 2.0, qr.level);
  if (!(beta > 2.0 * ls.c2k)) throw Error("good_lambda_sets: beta must exceed 2 C_{2,k}");
  if (!(gamma > 0.0)) throw Error("good_lambda_sets: gamma must be positive");

  const CubeFunction mq = cube_maximal(space, q, f);
  const CubeFunction sq = cube_sharp(space, q, f);
  ls.c0 = weak_type_constant(space, q, weak_type_family(space, q, f));
  double l1 = 0.0;
  for (Index x : q.members) l1 += std::fabs(f[x]) * space.mass(x);
  ls.lambda0 = ls.c0 * l1 / q.measure;

  if (grid.empty()) {
    const double top = *std::max_element(mq.values.begin(), mq.values.end());
    const double lo = ls.lambda0 > 0.0 ? ls.lambda0 * (1.0 + 1e-6) : std::max(top, 1.0) * 1e-3;
    const double hi = std::max(2.0 * lo, top * 1.0001);
    const int steps = 48;
    for (int i = 0; i < steps; ++i) grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (steps - 1)));
  } else {
    std::erase_if(grid, [&](double l) { return !(l > ls.lambda0); });
    if (grid.empty()) throw Error("good_lambda_sets: empty grid above lambda0");
    std::sort(grid.begin(), grid.end());
  }

  for (double lam : grid) {
    GoodLambdaRow row;
    row.lambda = lam;
    PointSet e;
    for (std::size_t i = 0; i < q.members.size(); ++i) {
      const Index x = q.members[i];
      if (mq.values[i] > lam) {
        row.e_lambda += space.mass(x);
        e.push_back(x);
      }
      if (mq.values[i] > beta * lam && sq.values[i] <= gamma * lam) row.g_measure += space.mass(x);
    }
    if (!e.empty() && e.size() < q.members.size()) row.whitney_multiplicity = whitney_cover(space, q, e).multiplicity;
    if (row.e_lambda > 0.0) ls.a = std::max(ls.a, row.g_measure * beta / (gamma * row.e_lambda));
    ls.rows.push_back(row);
  }
  return ls;
}

}  // namespace lochardy
