#pragma once

// Brute-force reference computations used to freeze expected values.
// Each routine is deliberately naive and independent of the library's
// precomputed orderings.

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <vector>

#include "lochardy/mmspace.hpp"

namespace oracle {

using lochardy::Index;
using lochardy::Space;

inline std::set<Index> closed_ball(const Space& s, Index c, double r) {
  std::set<Index> out;
  for (Index x = 0; x < s.size(); ++x) {
    if (s.dist(c, x) <= r + 1e-9) out.insert(x);
  }
  return out;
}

inline double set_mass(const Space& s, const std::set<Index>& a) {
  double m = 0.0;
  for (Index x : a) m += s.mass(x);
  return m;
}

/// All-pairs shortest paths by repeated relaxation (Bellman-Ford style).
inline std::vector<double> apsp(std::size_t n, const std::vector<std::tuple<Index, Index, double>>& edges) {
  std::vector<double> d(n * n, INFINITY);
  for (Index i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    for (auto [a, b, w] : edges) {
      for (Index s = 0; s < n; ++s) {
        d[s * n + b] = std::min(d[s * n + b], d[s * n + a] + w);
        d[s * n + a] = std::min(d[s * n + a], d[s * n + b] + w);
      }
    }
  }
  return d;
}

/// Doubling constant with radii sampled at every distance value, just below
/// every distance value, and at s itself; enlargements at every centre.
inline double doubling(const Space& s, double tau, double smax, double eps = 1e-7) {
  std::vector<double> radii{smax};
  for (Index i = 0; i < s.size(); ++i) {
    for (Index j = 0; j < s.size(); ++j) {
      const double d = s.dist(i, j);
      if (d > 0 && d <= smax + 1e-12) {
        radii.push_back(d);
        radii.push_back(d - eps);
      }
    }
  }
  double best = 1.0;
  for (Index c = 0; c < s.size(); ++c) {
    for (double r : radii) {
      if (r <= 0) continue;
      const auto small = closed_ball(s, c, r);
      const double ms = set_mass(s, small);
      for (Index cp = 0; cp < s.size(); ++cp) {
        const auto big = closed_ball(s, cp, tau * r);
        if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) continue;
        best = std::max(best, set_mass(s, big) / ms);
      }
    }
  }
  return best;
}

/// True iff `centers` is eta-separated and no point can be added.
inline bool is_maximal_separated(const Space& s, const std::vector<Index>& centers, double eta) {
  for (std::size_t a = 0; a < centers.size(); ++a) {
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      if (!(s.dist(centers[a], centers[b]) > eta)) return false;
    }
  }
  for (Index x = 0; x < s.size(); ++x) {
    bool addable = true;
    for (Index z : centers) addable = addable && s.dist(x, z) > eta;
    if (addable) return false;
  }
  return true;
}

}  // namespace oracle
