#include <random>
#include <vector>

#include "doctest.h"
#include "lochardy/kernels.hpp"

using namespace lochardy::kernels;

namespace {

struct Data {
  std::vector<double> v, w;
};

Data make_data(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 3.0);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.v.push_back(g(rng));
    d.w.push_back(u(rng));
  }
  return d;
}

void expect_close(double a, double b) { CHECK(a == doctest::Approx(b).epsilon(1e-12)); }

}  // namespace

TEST_CASE("scalar kernels on small fixed inputs") {
  const auto& t = scalar_table();
  const double v[] = {3.0, -5.0, 1.0};
  const double w[] = {1.0, 2.0, 0.5};
  CHECK(t.weighted_sum(v, w, 3) == doctest::Approx(3.0 - 10.0 + 0.5));
  CHECK(t.weighted_abs_sum(v, w, 3) == doctest::Approx(3.0 + 10.0 + 0.5));
  CHECK(t.weighted_abs_dev(v, w, 3, 1.0) == doctest::Approx(2.0 + 12.0 + 0.0));
  CHECK(t.weighted_sq_dev(v, w, 3, 1.0) == doctest::Approx(4.0 + 72.0));
  CHECK(t.max_abs(v, 3) == 5.0);
  double y[] = {1.0, 1.0, 1.0};
  t.axpy(y, v, 2.0, 3);
  CHECK(y[1] == -9.0);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const KernelTable* simd = avx2_table();
  if (simd == nullptr) {
    MESSAGE("AVX2 unavailable; equivalence skipped");
    return;
  }
  const auto& ref = scalar_table();
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 200u}) {
    const Data d = make_data(n, static_cast<unsigned>(n) + 11);
    expect_close(simd->weighted_sum(d.v.data(), d.w.data(), n), ref.weighted_sum(d.v.data(), d.w.data(), n));
    expect_close(simd->weighted_abs_sum(d.v.data(), d.w.data(), n),
                 ref.weighted_abs_sum(d.v.data(), d.w.data(), n));
    expect_close(simd->weighted_abs_dev(d.v.data(), d.w.data(), n, 0.3),
                 ref.weighted_abs_dev(d.v.data(), d.w.data(), n, 0.3));
    expect_close(simd->weighted_sq_dev(d.v.data(), d.w.data(), n, -1.2),
                 ref.weighted_sq_dev(d.v.data(), d.w.data(), n, -1.2));
    CHECK(simd->max_abs(d.v.data(), n) == ref.max_abs(d.v.data(), n));
    std::vector<double> y1(n, 0.5), y2(n, 0.5);
    simd->axpy(y1.data(), d.v.data(), -0.7, n);
    ref.axpy(y2.data(), d.v.data(), -0.7, n);
    for (std::size_t i = 0; i < n; ++i) expect_close(y1[i], y2[i]);
  }
}

TEST_CASE("general exponent deviation matches the closed forms") {
  const Data d = make_data(37, 5);
  expect_close(weighted_pow_dev(d.v, d.w, 0.2, 1.0), scalar_table().weighted_abs_dev(d.v.data(), d.w.data(), 37, 0.2));
  expect_close(weighted_pow_dev(d.v, d.w, 0.2, 2.0), scalar_table().weighted_sq_dev(d.v.data(), d.w.data(), 37, 0.2));
  double s = 0.0;
  for (std::size_t i = 0; i < 37; ++i) s += d.w[i] * std::pow(std::fabs(d.v[i] - 0.2), 3.0);
  expect_close(weighted_pow_dev(d.v, d.w, 0.2, 3.0), s);
}
