#include <random>

#include "doctest.h"
#include "lochardy/dyadic.hpp"
#include "lochardy/generators.hpp"

using namespace lochardy;

TEST_CASE("6-cycle cube system satisfies every axiom") {
  const Space s = cycle_space(6);
  const CubeSystem sys = build_cubes(s, 0.5, -2, 3);
  CHECK(sys.a0() > 0.0);
  CHECK(sys.a1() > 0.0);
  const AxiomReport rep = verify_cube_axioms(s, sys);
  REQUIRE(rep.rows.size() == 5);
  for (const auto& row : rep.rows) {
    CAPTURE(row.axiom);
    CAPTURE(row.witness);
    CHECK(row.holds);
  }
  CHECK(sys.level(-2).size() == 1);
  CHECK(sys.level(-2)[0].members.size() == 6);
  CHECK(sys.level(3).size() == 6);
  for (const auto& q : sys.level(3)) CHECK(q.members.size() == 1);
}

TEST_CASE("automatic levels run from one cube to singletons") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Space s = with_random_masses(random_geometric_space(40, seed), seed);
    const CubeSystem sys = build_cubes(s, 0.5);
    CHECK(sys.level(sys.k_min()).size() == 1);
    CHECK(sys.level(sys.k_max()).size() == s.size());
    CHECK(verify_cube_axioms(s, sys).all_hold());
    for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
      double total = 0.0;
      for (const auto& q : sys.level(k)) {
        total += q.measure;
        CHECK(q.measure >= ball(s, q.center, sys.a0() * sys.scale(k)).measure - 1e-12);
      }
      CHECK(total == doctest::Approx(s.total_mass()).epsilon(1e-12));
      for (std::size_t a = 0; k > sys.k_min() && a < sys.level(k).size(); ++a) {
        CHECK(sys.parent(CubeRef{k, a}).has_value());
      }
    }
  }
}

TEST_CASE("hand-built overlapping cubes fail the partition axiom") {
  const Space s = path_space(3);
  std::vector<std::vector<Cube>> levels{{Cube{0, 0, {0, 1}, 2.0}, Cube{0, 2, {1, 2}, 2.0}}};
  const CubeSystem sys(0.5, 0, levels, 0.5, 1.0);
  const AxiomReport rep = verify_cube_axioms(s, sys);
  CHECK_FALSE(rep.rows[0].holds);
  CHECK(rep.rows[0].witness.find("point 1") != std::string::npos);
}

TEST_CASE("singleton level satisfies the diameter axiom for any a1") {
  const Space s = path_space(4);
  std::vector<std::vector<Cube>> levels(1);
  for (Index x = 0; x < 4; ++x) levels[0].push_back(Cube{2, x, {x}, 1.0});
  const CubeSystem sys(0.5, 2, levels, 1.0, 1e-3);
  const AxiomReport rep = verify_cube_axioms(s, sys);
  CHECK(rep.rows[3].holds);
  CHECK(rep.all_hold());
}

TEST_CASE("cube-ball bounds") {
  const Space s = cycle_space(6);
  const CubeSystem sys = build_cubes(s, 0.5, -2, 3);
  for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
    for (std::size_t a = 0; a < sys.level(k).size(); ++a) {
      const Cube& q = sys.level(k)[a];
      const auto big = cube_ball_bounds(s, sys, {k, a}, ball(s, q.center, sys.a1() * sys.scale(k)));
      CHECK(big.equality_branch);
      CHECK(big.holds);
      const auto inner = cube_ball_bounds(s, sys, {k, a}, ball(s, q.center, sys.a0() * sys.scale(k)));
      CHECK(inner.holds);
      for (Index c : q.members) {
        for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) CHECK(cube_ball_bounds(s, sys, {k, a}, ball(s, c, r)).holds);
      }
    }
  }
  const Cube& q0 = sys.level(3)[0];
  const Index outside = q0.center == 0 ? 1 : 0;
  CHECK_THROWS_AS(cube_ball_bounds(s, sys, {3, 0}, ball(s, outside, 1.0)), Error);
}

TEST_CASE("cube-ball bounds on random spaces") {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Space s = with_random_masses(random_geometric_space(50, seed), seed + 7);
    const CubeSystem sys = build_cubes(s, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
      const int k = sys.k_min() + static_cast<int>(rng() % static_cast<unsigned>(sys.k_max() - sys.k_min() + 1));
      const std::size_t a = rng() % sys.level(k).size();
      const Cube& q = sys.level(k)[a];
      const Index c = q.members[rng() % q.members.size()];
      const double r = std::uniform_real_distribution<double>(0.0, 1.2)(rng) * sys.a1() * sys.scale(k);
      const auto rep = cube_ball_bounds(s, sys, {k, a}, ball(s, c, r));
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(rep.holds);
    }
  }
}

TEST_CASE("whitney covers") {
  const Space s = cycle_space(6);
  const Cube q{0, 0, {0, 1, 2, 3, 4, 5}, 6.0};
  const auto one = whitney_cover(s, q, {2});
  REQUIRE(one.balls.size() == 1);
  CHECK(one.balls[0].radius == doctest::Approx(1.0 / 3.0));
  CHECK(one.pieces[0] == PointSet{2});

  const auto most = whitney_cover(s, q, {0, 1, 2, 4, 5});
  const WhitneyCheck chk = verify_whitney(s, q, most);
  CHECK(chk.ok());
  for (const Ball& b : most.balls) {
    bool meets = false;
    for (Index y : {Index{3}}) meets = meets || s.dist(b.center, y) <= 3.0 * b.radius + 1e-9;
    CHECK(meets);
  }

  const auto e1 = whitney_cover(s, q, {0, 1});
  const auto e2 = whitney_cover(s, q, {0, 1, 2, 5});
  CHECK(verify_whitney(s, q, e1).ok());
  CHECK(verify_whitney(s, q, e2).ok());
  CHECK(e1.multiplicity >= 1);
  CHECK(e2.multiplicity >= 1);

  CHECK_THROWS_AS(whitney_cover(s, q, {}), Error);
  CHECK_THROWS_AS(whitney_cover(s, q, {0, 1, 2, 3, 4, 5}), Error);
}

TEST_CASE("whitney covers on random cubes") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Space s = random_geometric_space(40, seed);
    const CubeSystem sys = build_cubes(s, 0.5);
    for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
      for (const Cube& q : sys.level(k)) {
        if (q.members.size() < 2) continue;
        PointSet e;
        for (Index x : q.members) {
          if (rng() % 2) e.push_back(x);
        }
        if (e.empty() || e.size() == q.members.size()) continue;
        CHECK(verify_whitney(s, q, whitney_cover(s, q, e)).ok());
      }
    }
  }
}
