#include "doctest.h"
#include "lochardy/generators.hpp"
#include "lochardy/maximal.hpp"
#include "random_objects.hpp"

using namespace lochardy;

namespace {

FnOnSpace delta0(std::size_t n) { return testgen::spike(n, 0); }

}  // namespace

TEST_CASE("frozen values on the 6-cycle") {
  const Space c6 = cycle_space(6);
  const FnOnSpace f = delta0(6);
  CHECK(hl_maximal_local(c6, f)[1] == doctest::Approx(1.0 / 3.0));
  CHECK(sharp_maximal(c6, f, 1.0, 1.0)[0] == doctest::Approx(4.0 / 9.0));
  CHECK(n_operator(c6, f)[0] == doctest::Approx(7.0 / 9.0));
  CHECK(n0(c6, f)[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("constants") {
  const Space s = with_random_masses(random_geometric_space(25, 3), 3);
  const FnOnSpace c(25, -2.5);
  for (Index x = 0; x < 25; ++x) {
    CHECK(hl_maximal_local(s, c)[x] == doctest::Approx(2.5));
    CHECK(sharp_maximal(s, c, 1.0, 1.0)[x] == doctest::Approx(0.0));
    CHECK(s_sharp(s, c, 3.0, 1.0)[x] == doctest::Approx(0.0));
    CHECK(n_operator(s, c)[x] == doctest::Approx(2.5));
  }
  const CubeSystem sys = build_cubes(s, 0.5);
  for (const Cube& q : sys.level(sys.k_min() + 1)) {
    const auto m = cube_maximal(s, q, c);
    const auto sh = cube_sharp(s, q, c);
    for (std::size_t i = 0; i < q.members.size(); ++i) {
      CHECK(m.values[i] == doctest::Approx(2.5));
      CHECK(sh.values[i] == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("pointwise inequalities on random functions") {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Space s = with_random_masses(random_geometric_space(30, seed), seed);
    for (int t = 0; t < 10; ++t) {
      const FnOnSpace f = t % 3 == 0 ? testgen::spike(30, rng() % 30, 3.0) : testgen::normal_fn(30, rng);
      const FnOnSpace g = testgen::normal_fn(30, rng);
      const FnOnSpace m = hl_maximal_local(s, f);
      const FnOnSpace nf = n_operator(s, f);
      const FnOnSpace sf = sharp_maximal(s, f, 1.0, 1.0);
      const FnOnSpace sg = sharp_maximal(s, g, 1.0, 1.0);
      const FnOnSpace sfg = sharp_maximal(s, f + g, 1.0, 1.0);
      const FnOnSpace mabs = hl_maximal_local(s, f.abs());
      for (Index x = 0; x < 30; ++x) {
        CHECK(m[x] >= std::fabs(f[x]) - 1e-12);
        CHECK(leq_tol(nf[x], 3.0 * m[x]));
        CHECK(leq_tol(sfg[x], sf[x] + sg[x]));
        CHECK(mabs[x] == doctest::Approx(m[x]));
      }
      for (double q : {1.0, 2.0, 3.0}) {
        const FnOnSpace sq = sharp_maximal(s, f, 0.4, q);
        const FnOnSpace ss = s_sharp(s, f, q, 0.4);
        const FnOnSpace nq = n_operator_q(s, f, 0.4, q);
        const FnOnSpace nabs = n_operator_q(s, f.abs(), 0.4, q);
        for (Index x = 0; x < 30; ++x) {
          CHECK(leq_tol(ss[x], sq[x]));
          CHECK(leq_tol(sq[x], 2.0 * ss[x]));
          CHECK(leq_tol(nabs[x], 2.0 * nq[x]));
        }
      }
    }
  }
}

TEST_CASE("q = 2 best constant is the standard deviation") {
  std::mt19937_64 rng(5);
  const Space s = with_random_masses(random_geometric_space(20, 1), 1);
  const FnOnSpace f = testgen::normal_fn(20, rng);
  const FnOnSpace s2 = s_sharp(s, f, 2.0, 0.5);
  const FnOnSpace h2 = sharp_maximal(s, f, 0.5, 2.0);
  for (Index x = 0; x < 20; ++x) CHECK(s2[x] == doctest::Approx(h2[x]));
  // Golden section agrees with a fine scan.
  const std::vector<double> v{0.1, 2.0, -1.0, 0.7};
  const std::vector<double> w{1.0, 0.5, 2.0, 1.0};
  const auto bc = best_constant(v, w, 3.0);
  double scan = kInf;
  for (double c = -1.0; c <= 2.0; c += 1e-5) {
    double val = 0.0;
    for (int i = 0; i < 4; ++i) val += w[i] * std::pow(std::fabs(v[i] - c), 3.0);
    scan = std::min(scan, val);
  }
  CHECK(bc.value == doctest::Approx(scan).epsilon(1e-8));
  const auto med = best_constant(v, w, 1.0);
  CHECK(med.c == 0.1);
}

TEST_CASE("maximal function is monotone") {
  std::mt19937_64 rng(6);
  const Space s = random_geometric_space(25, 6);
  for (int t = 0; t < 20; ++t) {
    const FnOnSpace f = testgen::normal_fn(25, rng);
    FnOnSpace g = f.abs();
    for (Index x = 0; x < 25; ++x) g[x] += std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const FnOnSpace mf = hl_maximal_local(s, f);
    const FnOnSpace mg = hl_maximal_local(s, g);
    for (Index x = 0; x < 25; ++x) CHECK(leq_tol(mf[x], mg[x]));
  }
}

TEST_CASE("noncentred cube maximal against the centred one") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Space s = with_random_masses(random_geometric_space(40, seed), seed);
    const CubeSystem sys = build_cubes(s, 0.5);
    for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
      const double c2k = cube_doubling_bound(s, sys, 2.0, k);
      for (const Cube& q : sys.level(k)) {
        const FnOnSpace f = testgen::normal_fn(40, rng);
        const auto m = cube_maximal(s, q, f);
        const auto mc = cube_maximal_centred(s, q, f);
        for (std::size_t i = 0; i < q.members.size(); ++i) {
          CHECK(m.values[i] >= mc.values[i] - 1e-12);
          CHECK(m.values[i] >= std::fabs(f[q.members[i]]) - 1e-12);
          CHECK(leq_tol(m.values[i], c2k * mc.values[i]));
        }
      }
    }
  }
}

TEST_CASE("good lambda") {
  const Space s = with_random_masses(random_geometric_space(40, 4), 4);
  const CubeSystem sys = build_cubes(s, 0.5);
  const int k = sys.k_min() + 1;
  const CubeRef qr{k, 0};
  const Cube& q = sys.cube(qr);
  const double c2k = cube_doubling_bound(s, sys, 2.0, k);

  const FnOnSpace c(40, 2.0);
  const auto flat = good_lambda_sets(s, sys, qr, c, 3.0 * c2k, 0.1, {10.0 * c2k * 2.0 * 40, 1e6});
  CHECK(flat.a == 0.0);
  CHECK(flat.holds());

  PointSet half(q.members.begin(), q.members.begin() + static_cast<std::ptrdiff_t>(q.members.size() / 2 + 1));
  const FnOnSpace ind = testgen::indicator(40, half);
  for (double gamma : {0.05, 0.1}) {
    const auto ls = good_lambda_sets(s, sys, qr, ind, 3.0 * c2k, gamma);
    CHECK(std::isfinite(ls.a));
    CHECK(ls.holds());
    CHECK(ls.c0 >= 1.0);
    for (std::size_t i = 1; i < ls.rows.size(); ++i) CHECK(ls.rows[i].e_lambda <= ls.rows[i - 1].e_lambda);
  }
  CHECK_THROWS_AS(good_lambda_sets(s, sys, qr, ind, c2k, 0.1), Error);
  CHECK_THROWS_AS(good_lambda_sets(s, sys, qr, ind, 3.0 * c2k, 0.1, {1e-9}), Error);
}
