#include <algorithm>

#include "lochardy/dyadic.hpp"

namespace lochardy {

WhitneyCover whitney_cover(const Space& space, const Cube& q, const PointSet& e) {
  if (e.empty()) throw Error("whitney_cover: E is empty");
  if (!std::is_sorted(e.begin(), e.end())) throw Error("whitney_cover: E must be sorted");
  if (!std::includes(q.members.begin(), q.members.end(), e.begin(), e.end())) {
    throw Error("whitney_cover: E is not a subset of Q");
  }
  PointSet rest;
  std::set_difference(q.members.begin(), q.members.end(), e.begin(), e.end(), std::back_inserter(rest));
  if (rest.empty()) throw Error("whitney_cover: E must be a proper subset of Q");

  WhitneyCover cov;
  cov.region = e;
  std::vector<bool> covered(space.size(), false);
  for (Index x : e) {
    if (covered[x]) continue;
    double gap = kInf;
    for (Index y : rest) gap = std::min(gap, space.dist(x, y));
    Ball b = ball(space, x, gap / 3.0);
    PointSet piece;
    std::set_intersection(b.members.begin(), b.members.end(), q.members.begin(), q.members.end(),
                          std::back_inserter(piece));
    for (Index y : piece) covered[y] = true;
    cov.balls.push_back(std::move(b));
    cov.pieces.push_back(std::move(piece));
  }
  std::vector<std::size_t> mult(space.size(), 0);
  for (const auto& p : cov.pieces) {
    for (Index y : p) cov.multiplicity = std::max(cov.multiplicity, ++mult[y]);
  }
  return cov;
}

WhitneyCheck verify_whitney(const Space& space, const Cube& q, const WhitneyCover& cover) {
  WhitneyCheck chk;
  PointSet uni;
  for (const auto& p : cover.pieces) uni.insert(uni.end(), p.begin(), p.end());
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  chk.union_ok = uni == cover.region;

  PointSet rest;
  std::set_difference(q.members.begin(), q.members.end(), cover.region.begin(), cover.region.end(),
                      std::back_inserter(rest));
  for (const Ball& b : cover.balls) {
    bool touches = false;
    for (Index y : rest) {
      if (space.dist(b.center, y) <= 3.0 * b.radius + kTol) {
        touches = true;
        break;
      }
    }
    chk.touches_complement = chk.touches_complement && touches;
  }
  std::vector<std::size_t> mult(space.size(), 0);
  for (const auto& p : cover.pieces) {
    for (Index y : p) chk.multiplicity = std::max(chk.multiplicity, ++mult[y]);
  }
  return chk;
}

}  // namespace lochardy
