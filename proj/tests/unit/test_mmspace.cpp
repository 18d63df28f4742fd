#include <random>

#include "doctest.h"
#include "lochardy/generators.hpp"
#include "lochardy/mmspace.hpp"
#include "lochardy/space_io.hpp"
#include "oracles.hpp"

using namespace lochardy;

namespace {

Space line3() { return path_space(3); }

Space single_point() { return Space({0.0}, {2.5}); }

std::string error_of(const std::string& doc) {
  try {
    load_space(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("graph documents are closed under shortest paths") {
  const Space s = load_space(R"({"n":3,"metric":{"type":"graph","data":[[0,1,1.0],[1,2,1.0]]},"mass":[1,1,1]})");
  CHECK(s.dist(0, 2) == 2.0);
  CHECK(s.scale_unit() == 1.0);
}

TEST_CASE("load_space rejects malformed metrics") {
  CHECK(error_of(R"({"n":3,"metric":{"type":"dense","data":[[0,1,5],[1,0,1],[5,1,0]]},"mass":[1,1,1]})") ==
        "triangle violation (0,1,2)");
  CHECK(error_of(R"({"n":2,"metric":{"type":"dense","data":[[0,1],[1,0]]},"mass":[1,0]})") ==
        "nonpositive mass at point 1");
  CHECK(error_of(R"({"n":2,"metric":{"type":"dense","data":[[0,1],[2,0]]},"mass":[1,1]})").find("asymmetric") !=
        std::string::npos);
  CHECK(error_of(R"({"n":3,"metric":{"type":"graph","data":[[0,1,1.0]]},"mass":[1,1,1]})").find("disconnected") !=
        std::string::npos);
  CHECK_FALSE(error_of("{not json").empty());
}

TEST_CASE("6-cycle has diameter 3 and matches brute-force shortest paths") {
  const Space s = cycle_space(6);
  CHECK(s.diameter() == 3.0);
  std::vector<std::tuple<Index, Index, double>> edges;
  for (Index i = 0; i < 6; ++i) edges.emplace_back(i, (i + 1) % 6, 1.0);
  const auto d = oracle::apsp(6, edges);
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < 6; ++j) CHECK(s.dist(i, j) == d[i * 6 + j]);
  }
}

TEST_CASE("space documents round-trip") {
  const Space s = with_random_masses(random_geometric_space(12, 3), 4);
  const Space t = load_space(space_to_json(s));
  for (Index i = 0; i < s.size(); ++i) {
    CHECK(t.mass(i) == s.mass(i));
    for (Index j = 0; j < s.size(); ++j) CHECK(t.dist(i, j) == s.dist(i, j));
  }
}

TEST_CASE("closed balls") {
  const Space c6 = cycle_space(6);
  const Ball b = ball(c6, 0, 1.0);
  CHECK(b.members == PointSet{0, 1, 5});
  CHECK(b.measure == 3.0);
  const Ball z = ball(c6, 4, 0.0);
  CHECK(z.members == PointSet{4});
  CHECK(z.measure == c6.mass(4));
  CHECK(ball(line3(), 1, 2.0).members == PointSet{0, 1, 2});
  CHECK_THROWS_AS(ball(c6, 0, -1.0), Error);
}

TEST_CASE("ball measure is monotone in the radius and saturates at the diameter") {
  const Space s = with_random_masses(random_geometric_space(30, 9), 10);
  for (Index c = 0; c < s.size(); ++c) {
    double prev = 0.0;
    for (double r = 0.0; r <= s.diameter() + 0.05; r += 0.05) {
      const double m = ball(s, c, r).measure;
      CHECK(m >= prev);
      prev = m;
    }
    CHECK(ball(s, c, s.diameter()).measure == doctest::Approx(s.total_mass()));
  }
}

TEST_CASE("doubling constant frozen values") {
  // Radii range over all reals in (0, s]: just below 1 the ball is a
  // singleton and its open 2-enlargement is the 3-point arc.
  CHECK(doubling_constant(cycle_space(6), 2.0, 1.0).value == doctest::Approx(3.0));
  CHECK(oracle::doubling(cycle_space(6), 2.0, 1.0) == doctest::Approx(3.0));
  CHECK(doubling_constant(line3(), 2.0, 1.0).value == doctest::Approx(3.0));
  CHECK(oracle::doubling(line3(), 2.0, 1.0) == doctest::Approx(3.0));
  const auto single = doubling_constant(single_point(), 3.0, 1.0);
  CHECK(single.value == 1.0);
  const auto rep = doubling_constant(cycle_space(6), 2.0, 1.0);
  REQUIRE(rep.small.has_value());
  REQUIRE(rep.large.has_value());
  CHECK(rep.large->measure / rep.small->measure == doctest::Approx(rep.value));
  CHECK(std::includes(rep.large->members.begin(), rep.large->members.end(), rep.small->members.begin(),
                      rep.small->members.end()));
  CHECK_THROWS_AS(doubling_constant(line3(), 0.5, 1.0), Error);
  CHECK_THROWS_AS(doubling_constant(line3(), 2.0, 0.0), Error);
}

TEST_CASE("doubling constant agrees with the sampled-radius oracle") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Space s = with_random_masses(random_geometric_space(9, seed), seed + 100);
    for (double tau : {1.0, 1.5, 2.0, 4.0}) {
      for (double sc : {0.1, 0.3, 1.0}) {
        CAPTURE(seed);
        CAPTURE(tau);
        CAPTURE(sc);
        CHECK(doubling_constant(s, tau, sc).value == doctest::Approx(oracle::doubling(s, tau, sc)).epsilon(1e-9));
      }
    }
  }
  for (std::size_t n : {4u, 5u, 7u}) {
    for (double tau : {2.0, 3.0, 12.0}) {
      for (double sc : {0.5, 1.0, 2.0}) {
        CHECK(doubling_constant(cycle_space(n), tau, sc).value == doctest::Approx(oracle::doubling(cycle_space(n), tau, sc)));
        CHECK(doubling_constant(grid_space(n + 3), tau, sc).value ==
              doctest::Approx(oracle::doubling(grid_space(n + 3), tau, sc)));
      }
    }
  }
}

TEST_CASE("doubling constant is monotone in tau and s") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const Space s = with_random_masses(random_geometric_space(25, seed), seed);
    double prev_tau = 1.0;
    for (double tau : {1.0, 1.3, 2.0, 3.5, 8.0}) {
      const double v = doubling_constant(s, tau, 0.4).value;
      CHECK(v >= prev_tau - 1e-12);
      prev_tau = v;
    }
    double prev_s = 1.0;
    for (double sc : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
      const double v = doubling_constant(s, 2.0, sc).value;
      CHECK(v >= prev_s - 1e-12);
      prev_s = v;
    }
  }
}

TEST_CASE("midpoint property") {
  const auto fail = check_midpoint(cycle_space(6), 0.6, 1.0);
  CHECK_FALSE(fail.holds);
  REQUIRE(fail.violation.has_value());
  CHECK(*fail.violation == std::pair<Index, Index>{0, 3});
  CHECK(check_midpoint(cycle_space(6), 0.7, 1.0).holds);
  const Space two({0.0, 2.0, 2.0, 0.0}, {1.0, 1.0});
  const auto r = check_midpoint(two, 0.9, 1.0);
  CHECK_FALSE(r.holds);
  CHECK(*r.violation == std::pair<Index, Index>{0, 1});
  CHECK(check_midpoint(cycle_space(6), 0.5, 3.0).holds);
}

TEST_CASE("greedy nets") {
  CHECK(build_net(line3(), 1.5).centers == std::vector<Index>{0, 2});
  CHECK(build_net(line3(), 0.5).centers == std::vector<Index>{0, 1, 2});
  CHECK(build_net(line3(), 2.0).centers == std::vector<Index>{0});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Space s = random_geometric_space(40, seed);
    for (double eta : {0.05, 0.1, 0.25, 0.5}) {
      const Net net = build_net(s, eta);
      CHECK(oracle::is_maximal_separated(s, net.centers, eta));
    }
  }
  CHECK_THROWS_AS(build_net_seeded(line3(), 1.5, std::vector<Index>{0, 1}), Error);
}

TEST_CASE("covering multiplicity against D_{12,c/4}") {
  const Space c6 = cycle_space(6);
  const auto rep = covering_multiplicity(c6, build_net(c6, 1.0), 2.0);
  CHECK(rep.bound == doctest::Approx(oracle::doubling(c6, 12.0, 0.5)));
  CHECK(rep.holds);
  const auto one = covering_multiplicity(single_point(), build_net(single_point(), 0.5), 1.0);
  CHECK(one.max_mult == 1);
  CHECK(one.holds);
  CHECK_THROWS_AS(covering_multiplicity(c6, build_net(c6, 1.0), 1.0), Error);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Space s = random_geometric_space(60, seed);
    for (double c : {0.5, 1.0}) {
      const Net net = build_net(s, c / 2.0);
      CHECK(covering_multiplicity(s, net, c).holds);
      for (double b : {1.5 * c, 3.0 * c}) CHECK(covering_ball_count(s, net, c, b).holds);
    }
  }
}
