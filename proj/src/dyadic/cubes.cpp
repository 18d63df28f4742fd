#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "lochardy/dyadic.hpp"

namespace lochardy {

CubeSystem::CubeSystem(double delta, int k_min, std::vector<std::vector<Cube>> levels, double a0, double a1)
    : delta_(delta), k_min_(k_min), levels_(std::move(levels)), a0_(a0), a1_(a1) {
  if (!(delta_ > 0.0 && delta_ < 1.0)) throw Error("cubes: delta must lie in (0,1)");
  if (levels_.empty()) throw Error("cubes: no levels");
  Index max_pt = 0;
  for (const auto& lv : levels_) {
    for (const auto& q : lv) {
      if (q.members.empty()) throw Error("cubes: empty cube");
      max_pt = std::max(max_pt, q.members.back() + 1);
    }
  }
  owner_.resize(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    owner_[l].assign(max_pt, std::nullopt);
    for (std::size_t a = 0; a < levels_[l].size(); ++a) {
      for (Index x : levels_[l][a].members) {
        if (!owner_[l][x]) owner_[l][x] = a;
      }
    }
  }
}

const std::vector<Cube>& CubeSystem::level(int k) const {
  if (k < k_min_ || k > k_max()) throw Error("cubes: level out of range");
  return levels_[static_cast<std::size_t>(k - k_min_)];
}

std::optional<std::size_t> CubeSystem::cube_of(int k, Index x) const {
  const auto& own = owner_.at(static_cast<std::size_t>(k - k_min_));
  return x < own.size() ? own[x] : std::nullopt;
}

std::optional<std::size_t> CubeSystem::parent(CubeRef r) const {
  if (r.level <= k_min_) return std::nullopt;
  const Cube& q = cube(r);
  std::optional<std::size_t> found;
  for (std::size_t b = 0; b < level(r.level - 1).size(); ++b) {
    const auto& pm = level(r.level - 1)[b].members;
    if (std::includes(pm.begin(), pm.end(), q.members.begin(), q.members.end())) {
      if (found) return std::nullopt;
      found = b;
    }
  }
  return found;
}

std::pair<int, int> auto_levels(const Space& space, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error("cubes: delta must lie in (0,1)");
  const double ld = std::log(delta);
  const double diam = std::max(space.diameter(), kTol);
  int k_min = static_cast<int>(std::floor(std::log(diam) / ld));
  while (std::pow(delta, k_min) < diam) --k_min;
  const double mind = std::isinf(space.min_positive_distance()) ? diam : space.min_positive_distance();
  int k_max = static_cast<int>(std::floor(std::log(mind) / ld));
  while (std::pow(delta, k_max) >= mind) ++k_max;
  return {k_min, std::max(k_min, k_max)};
}

CubeRadii cube_radii(const Space& space, const Cube& q) {
  CubeRadii r;
  const auto ord = space.order(q.center);
  const auto sd = space.sorted_dist(q.center);
  auto in_q = [&](Index x) { return std::binary_search(q.members.begin(), q.members.end(), x); };
  r.inner = kInf;
  double last_inside = 0.0;
  for (std::size_t i = 0; i < ord.size(); ++i) {
    if (!in_q(ord[i])) {
      // Points tied with the first outsider are excluded as well.
      double below = 0.0;
      for (std::size_t j = i; j-- > 0;) {
        if (sd[j] < sd[i] - kTol) {
          below = sd[j];
          break;
        }
      }
      r.inner = 0.5 * (below + sd[i]);
      break;
    }
    last_inside = sd[i];
  }
  (void)last_inside;
  for (Index x : q.members) r.outer = std::max(r.outer, space.dist(q.center, x));
  for (Index x : q.members) {
    for (Index y : q.members) r.diameter = std::max(r.diameter, space.dist(x, y));
  }
  return r;
}

namespace {

Index nearest_center(const Space& space, Index x, const std::vector<Index>& centers) {
  Index best = centers.front();
  double bd = space.dist(x, best);
  for (Index z : centers) {
    const double d = space.dist(x, z);
    if (d < bd - kTol || (std::fabs(d - bd) <= kTol && z < best)) {
      best = z;
      bd = d;
    }
  }
  return best;
}

}  // namespace

CubeSystem build_cubes(const Space& space, double delta, int k_min, int k_max) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error("build_cubes: delta must lie in (0,1)");
  if (k_min > k_max) throw Error("build_cubes: k_min exceeds k_max");
  const std::size_t n = space.size();
  const std::size_t nlev = static_cast<std::size_t>(k_max - k_min + 1);

  std::vector<std::vector<Index>> centers(nlev);
  centers[0] = build_net(space, std::pow(delta, k_min)).centers;
  for (std::size_t l = 1; l < nlev; ++l) {
    centers[l] = build_net_seeded(space, std::pow(delta, k_min + static_cast<int>(l)), centers[l - 1]).centers;
  }

  // anc[l][x]: the level-l centre whose cube contains x.
  std::vector<std::vector<Index>> anc(nlev, std::vector<Index>(n));
  for (Index x = 0; x < n; ++x) anc[nlev - 1][x] = nearest_center(space, x, centers[nlev - 1]);
  for (std::size_t l = nlev - 1; l-- > 0;) {
    std::map<Index, Index> parent;
    for (Index w : centers[l + 1]) parent[w] = nearest_center(space, w, centers[l]);
    for (Index x = 0; x < n; ++x) anc[l][x] = parent.at(anc[l + 1][x]);
  }

  std::vector<std::vector<Cube>> levels(nlev);
  for (std::size_t l = 0; l < nlev; ++l) {
    std::map<Index, std::size_t> slot;
    for (Index z : centers[l]) {
      slot[z] = levels[l].size();
      levels[l].push_back(Cube{k_min + static_cast<int>(l), z, {}, 0.0});
    }
    for (Index x = 0; x < n; ++x) {
      Cube& q = levels[l][slot.at(anc[l][x])];
      q.members.push_back(x);
      q.measure += space.mass(x);
    }
    std::erase_if(levels[l], [](const Cube& q) { return q.members.empty(); });
  }

  double a0 = kInf, a1 = 0.0;
  for (const auto& lv : levels) {
    for (const auto& q : lv) {
      const double sc = std::pow(delta, q.level);
      const CubeRadii r = cube_radii(space, q);
      if (std::isfinite(r.inner)) a0 = std::min(a0, r.inner / sc);
      a1 = std::max(a1, std::max(r.diameter, r.outer) / sc);
    }
  }
  if (std::isinf(a0)) a0 = std::max(a1, 1.0);
  if (a1 <= 0.0) a1 = a0;
  return CubeSystem(delta, k_min, std::move(levels), a0, a1);
}

CubeSystem build_cubes(const Space& space, double delta) {
  const auto [lo, hi] = auto_levels(space, delta);
  return build_cubes(space, delta, lo, hi);
}

AxiomReport verify_cube_axioms(const Space& space, const CubeSystem& sys) {
  const std::size_t n = space.size();
  AxiomReport rep;
  AxiomRow partition{"partition", true, ""};
  AxiomRow nesting{"nesting", true, ""};
  AxiomRow unique_parent{"unique-parent", true, ""};
  AxiomRow diameter{"diameter", true, ""};
  AxiomRow balls{"balls", true, ""};
  auto fail = [](AxiomRow& row, const std::string& w) {
    if (row.holds) row.witness = w;
    row.holds = false;
  };

  for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
    std::vector<int> cover(n, 0);
    for (const auto& q : sys.level(k)) {
      for (Index x : q.members) {
        if (x >= n) {
          fail(partition, "level " + std::to_string(k) + " cube holds unknown point");
          continue;
        }
        ++cover[x];
      }
    }
    for (Index x = 0; x < n; ++x) {
      if (cover[x] != 1) {
        fail(partition, "level " + std::to_string(k) + " point " + std::to_string(x) + " covered " +
                            std::to_string(cover[x]) + " times");
      }
    }
  }

  for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
    for (int l = k + 1; l <= sys.k_max(); ++l) {
      for (std::size_t b = 0; b < sys.level(l).size(); ++b) {
        const auto& qm = sys.level(l)[b].members;
        std::size_t containing = 0;
        for (const auto& big : sys.level(k)) {
          PointSet inter;
          std::set_intersection(qm.begin(), qm.end(), big.members.begin(), big.members.end(),
                                std::back_inserter(inter));
          if (inter.empty()) continue;
          if (inter.size() != qm.size()) {
            fail(nesting, "cube (" + std::to_string(l) + "," + std::to_string(b) + ") straddles level " +
                              std::to_string(k));
          } else {
            ++containing;
          }
        }
        if (containing != 1) {
          fail(unique_parent, "cube (" + std::to_string(l) + "," + std::to_string(b) + ") has " +
                                  std::to_string(containing) + " ancestors at level " + std::to_string(k));
        }
      }
    }
  }

  for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
    const double sc = sys.scale(k);
    for (std::size_t a = 0; a < sys.level(k).size(); ++a) {
      const Cube& q = sys.level(k)[a];
      const std::string id = "cube (" + std::to_string(k) + "," + std::to_string(a) + ")";
      const CubeRadii r = cube_radii(space, q);
      if (!leq_tol(r.diameter, sys.a1() * sc)) fail(diameter, id);
      auto balls_ok = [&](Index z) {
        Cube moved = q;
        moved.center = z;
        const Ball inner = ball(space, z, sys.a0() * sc);
        const bool inside = std::includes(q.members.begin(), q.members.end(), inner.members.begin(),
                                          inner.members.end());
        bool outside = true;
        for (Index x : q.members) outside = outside && leq_tol(space.dist(z, x), sys.a1() * sc);
        return inside && outside;
      };
      bool ok = std::binary_search(q.members.begin(), q.members.end(), q.center) && balls_ok(q.center);
      for (std::size_t i = 0; !ok && i < q.members.size(); ++i) ok = balls_ok(q.members[i]);
      if (!ok) fail(balls, id);
    }
  }
  rep.rows = {partition, nesting, unique_parent, diameter, balls};
  return rep;
}

double cube_doubling_bound(const Space& space, const CubeSystem& sys, double tau, int k) {
  const double sc = sys.scale(k);
  return doubling_constant(space, tau, sys.a1() * sc).value *
         doubling_constant(space, sys.a1() / (sys.a0() * sys.delta()), sc).value;
}

CubeBallReport cube_ball_bounds(const Space& space, const CubeSystem& sys, CubeRef qr, const Ball& b,
                                std::optional<int> nu) {
  const Cube& q = sys.cube(qr);
  if (!std::binary_search(q.members.begin(), q.members.end(), b.center)) {
    throw Error("cube_ball_bounds: ball centre not in cube");
  }
  CubeBallReport rep;
  PointSet inter;
  std::set_intersection(b.members.begin(), b.members.end(), q.members.begin(), q.members.end(),
                        std::back_inserter(inter));
  for (Index x : inter) rep.lhs += space.mass(x);
  if (b.radius >= sys.a1() * sys.scale(qr.level) - kTol) {
    rep.equality_branch = true;
    rep.rhs = q.measure;
    rep.holds = std::fabs(rep.lhs - rep.rhs) <= kTol * (1.0 + rep.rhs);
  } else {
    const int v = nu.value_or(qr.level);
    rep.constant = doubling_constant(space, sys.a1() / (sys.a0() * sys.delta()), sys.scale(v)).value;
    rep.rhs = b.measure / rep.constant;
    rep.holds = leq_tol(rep.rhs, rep.lhs);
  }
  return rep;
}

std::string cubes_to_json(const CubeSystem& sys) {
  nlohmann::json doc;
  doc["delta"] = sys.delta();
  doc["a0"] = sys.a0();
  doc["a1"] = sys.a1();
  doc["levels"] = nlohmann::json::array();
  for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
    nlohmann::json lv;
    lv["k"] = k;
    lv["cubes"] = nlohmann::json::array();
    for (const auto& q : sys.level(k)) lv["cubes"].push_back({{"center", q.center}, {"members", q.members}});
    doc["levels"].push_back(lv);
  }
  return doc.dump();
}

}  // namespace lochardy
