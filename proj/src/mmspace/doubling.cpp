#include <algorithm>

#include "lochardy/mmspace.hpp"

namespace lochardy {

namespace {

Ball ball_from_count(const Space& space, Index c, std::size_t count, double radius) {
  const auto ord = space.order(c);
  Ball b;
  b.center = c;
  b.radius = radius;
  b.members.assign(ord.begin(), ord.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(b.members.begin(), b.members.end());
  b.measure = space.prefix_mass(c)[count];
  return b;
}

}  // namespace

// For a member set realised at radius r_j around c, the admissible radii are
// [r_j, min(next, s)] minus the point `next` itself (where the set grows).
// The ratio is nondecreasing in the radius, so the supremum is attained in
// the limit r -> next from below (open enlargement of radius tau * next) when
// next <= s, and at r = s (closed enlargement) otherwise.
DoublingReport doubling_constant(const Space& space, double tau, double s) {
  if (!(tau >= 1.0)) throw Error("doubling_constant: tau must be >= 1");
  if (!(s > 0.0)) throw Error("doubling_constant: s must be positive");
  const std::size_t n = space.size();

  DoublingReport rep;
  rep.tau = tau;
  rep.s = s;
  rep.value = 1.0;

  struct Best {
    double ratio = 0.0;
    Index c = 0, cp = 0;
    std::size_t len = 0, len_large = 0;
    double r = 0.0, big_r = 0.0;
    bool open = false;
  } best;

  std::vector<double> maxd(n);
  for (Index c = 0; c < n; ++c) {
    const auto ord = space.order(c);
    const auto sd = space.sorted_dist(c);
    std::fill(maxd.begin(), maxd.end(), 0.0);
    std::size_t added = 0;
    for (const BallPrefix& bp : space.balls(c)) {
      if (bp.radius > s + kTol) break;
      for (; added < bp.len; ++added) {
        const auto row = space.dist_row(ord[added]);
        for (Index cp = 0; cp < n; ++cp) maxd[cp] = std::max(maxd[cp], row[cp]);
      }
      const double next = bp.len < n ? sd[bp.len] : kInf;
      const bool open = next <= s + kTol;
      const double r = open ? next : s;
      const double big_r = tau * r;
      const double mu_small = space.prefix_mass(c)[bp.len];
      for (Index cp = 0; cp < n; ++cp) {
        std::size_t cnt;
        if (open) {
          if (!(maxd[cp] < big_r - kTol)) continue;
          cnt = space.open_count(cp, big_r);
        } else {
          if (!(maxd[cp] <= big_r + kTol)) continue;
          cnt = space.closed_count(cp, big_r);
        }
        const double ratio = space.prefix_mass(cp)[cnt] / mu_small;
        if (ratio > best.ratio) best = {ratio, c, cp, bp.len, cnt, r, big_r, open};
      }
    }
  }
  if (best.ratio > 0.0) {
    rep.value = std::max(1.0, best.ratio);
    rep.small = ball_from_count(space, best.c, best.len, best.r);
    rep.large = ball_from_count(space, best.cp, best.len_large, best.big_r);
    rep.radius_is_limit = best.open;
  }
  return rep;
}

MidpointReport check_midpoint(const Space& space, double beta, double r0) {
  const std::size_t n = space.size();
  MidpointReport rep;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      const double d = space.dist(x, y);
      if (!(d > r0 + kTol)) continue;
      const double lim = beta * d - kTol;
      bool found = false;
      for (Index z = 0; z < n && !found; ++z) {
        found = space.dist(x, z) < lim && space.dist(y, z) < lim;
      }
      if (!found) {
        rep.holds = false;
        rep.violation = std::make_pair(x, y);
        return rep;
      }
    }
  }
  return rep;
}

Net build_net_seeded(const Space& space, double eta, std::span<const Index> seed) {
  if (!(eta > 0.0)) throw Error("build_net: eta must be positive");
  const std::size_t n = space.size();
  Net net;
  net.eta = eta;
  std::vector<bool> is_center(n, false);
  for (Index z : seed) {
    for (Index w : net.centers) {
      if (!(space.dist(z, w) > eta + kTol)) throw Error("build_net: seed is not eta-separated");
    }
    net.centers.push_back(z);
    is_center[z] = true;
  }
  for (Index x = 0; x < n; ++x) {
    if (is_center[x]) continue;
    bool separated = true;
    for (Index z : net.centers) {
      if (!(space.dist(x, z) > eta + kTol)) {
        separated = false;
        break;
      }
    }
    if (separated) {
      net.centers.push_back(x);
      is_center[x] = true;
    }
  }
  net.mult_point.assign(n, 0);
  for (Index z : net.centers) {
    const auto row = space.dist_row(z);
    for (Index x = 0; x < n; ++x) {
      if (row[x] <= 2.0 * eta + kTol) ++net.mult_point[x];
    }
  }
  return net;
}

Net build_net(const Space& space, double eta) { return build_net_seeded(space, eta, {}); }

std::size_t Net::mult_ball(const Space& space, const Ball& b) const {
  std::size_t count = 0;
  for (Index z : centers) {
    const auto row = space.dist_row(z);
    for (Index x : b.members) {
      if (row[x] <= 2.0 * eta + kTol) {
        ++count;
        break;
      }
    }
  }
  return count;
}

CoveringReport covering_multiplicity(const Space& space, const Net& net, double c) {
  if (std::fabs(net.eta - c / 2.0) > kTol) throw Error("covering_multiplicity: eta mismatch (net must be a c/2-discretisation)");
  CoveringReport rep;
  rep.mult_point = net.mult_point;
  rep.max_mult = *std::max_element(rep.mult_point.begin(), rep.mult_point.end());
  rep.bound = doubling_constant(space, 12.0, c / 4.0).value;
  rep.holds = leq_tol(static_cast<double>(rep.max_mult), rep.bound);
  return rep;
}

BallCountReport covering_ball_count(const Space& space, const Net& net, double c, double b) {
  if (std::fabs(net.eta - c / 2.0) > kTol) throw Error("covering_ball_count: eta mismatch (net must be a c/2-discretisation)");
  if (!(b > c)) throw Error("covering_ball_count: b must exceed c");
  BallCountReport rep;
  rep.b = b;
  for (Index x = 0; x < space.size(); ++x) {
    const std::size_t cnt = net.mult_ball(space, ball(space, x, b));
    if (cnt > rep.max_count) {
      rep.max_count = cnt;
      rep.argmax_center = x;
    }
  }
  rep.bound = doubling_constant(space, 4.0 * (b / c) + 8.0, c / 4.0).value *
              doubling_constant(space, 12.0, c / 4.0).value;
  rep.holds = leq_tol(static_cast<double>(rep.max_count), rep.bound);
  return rep;
}

}  // namespace lochardy
