#include <cmath>
#include <random>

#include "lochardy/generators.hpp"

namespace lochardy {

namespace {

std::vector<double> unit_masses(std::size_t n) { return std::vector<double>(n, 1.0); }

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Space cycle_space(std::size_t n) {
  if (n == 0) throw Error("cycle: n must be positive");
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      d[i * n + j] = static_cast<double>(std::min(k, n - k));
    }
  }
  return Space(std::move(d), unit_masses(n));
}

Space path_space(std::size_t n) {
  if (n == 0) throw Error("path: n must be positive");
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::fabs(static_cast<double>(i) - static_cast<double>(j));
  }
  return Space(std::move(d), unit_masses(n));
}

Space random_geometric_space(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error("random-geometric: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = u(rng);
    y[i] = u(rng);
  }
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
  }
  return Space(std::move(d), unit_masses(n));
}

Space grid_space(std::size_t n) {
  if (n == 0) throw Error("grid: n must be positive");
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dr = std::fabs(static_cast<double>(i / cols) - static_cast<double>(j / cols));
      const double dc = std::fabs(static_cast<double>(i % cols) - static_cast<double>(j % cols));
      d[i * n + j] = dr + dc;
    }
  }
  return Space(std::move(d), unit_masses(n));
}

Space generate_space(const std::string& family, std::size_t n, std::uint64_t seed) {
  if (family == "cycle") return cycle_space(n);
  if (family == "path") return path_space(n);
  if (family == "random-geometric") return random_geometric_space(n, seed);
  if (family == "grid") return grid_space(n);
  throw Error("unknown space family '" + family + "'");
}

Space with_random_masses(const Space& space, std::uint64_t seed, double lo, double hi) {
  const std::size_t n = space.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> d(n * n), m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = u(rng);
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = space.dist(i, j);
  }
  return Space(std::move(d), std::move(m), space.scale_unit());
}

}  // namespace lochardy
