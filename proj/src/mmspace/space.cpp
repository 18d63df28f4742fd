#include <algorithm>
#include <numeric>
#include <sstream>

#include "lochardy/mmspace.hpp"

namespace lochardy {

Space::Space(std::vector<double> distances, std::vector<double> masses, double scale_unit)
    : n_(masses.size()), dist_(std::move(distances)), mass_(std::move(masses)), scale_unit_(scale_unit) {
  if (n_ == 0) throw Error("space: no points");
  if (dist_.size() != n_ * n_) throw Error("space: distance matrix must be n x n");
  if (!(scale_unit_ > 0.0) || !std::isfinite(scale_unit_)) throw Error("space: scale_unit must be positive");

  for (Index i = 0; i < n_; ++i) {
    if (!(mass_[i] > 0.0) || !std::isfinite(mass_[i])) {
      std::ostringstream os;
      os << "nonpositive mass at point " << i;
      throw Error(os.str());
    }
    total_mass_ += mass_[i];
    if (dist(i, i) != 0.0) {
      std::ostringstream os;
      os << "nonzero diagonal at point " << i;
      throw Error(os.str());
    }
    for (Index j = 0; j < n_; ++j) {
      const double d = dist(i, j);
      if (!std::isfinite(d) || d < 0.0) {
        std::ostringstream os;
        os << "invalid distance (" << i << "," << j << ")";
        throw Error(os.str());
      }
      if (std::fabs(d - dist(j, i)) > kTol) {
        std::ostringstream os;
        os << "asymmetric distance (" << i << "," << j << ")";
        throw Error(os.str());
      }
      if (i != j && d <= kTol) {
        std::ostringstream os;
        os << "distinct points at distance zero (" << i << "," << j << ")";
        throw Error(os.str());
      }
    }
  }
  for (Index i = 0; i < n_; ++i) {
    for (Index k = 0; k < n_; ++k) {
      const double dik = dist(i, k);
      for (Index j = 0; j < n_; ++j) {
        if (dist(i, j) > dik + dist(k, j) + kTol) {
          std::ostringstream os;
          os << "triangle violation (" << i << "," << k << "," << j << ")";
          throw Error(os.str());
        }
      }
    }
  }

  order_.resize(n_ * n_);
  sorted_dist_.resize(n_ * n_);
  sorted_mass_.resize(n_ * n_);
  prefix_mass_.resize(n_ * (n_ + 1));
  balls_.resize(n_);
  for (Index c = 0; c < n_; ++c) {
    Index* ord = order_.data() + c * n_;
    std::iota(ord, ord + n_, Index{0});
    std::stable_sort(ord, ord + n_, [&](Index a, Index b) { return dist(c, a) < dist(c, b); });
    double* pm = prefix_mass_.data() + c * (n_ + 1);
    pm[0] = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      sorted_dist_[c * n_ + k] = dist(c, ord[k]);
      sorted_mass_[c * n_ + k] = mass_[ord[k]];
      pm[k + 1] = pm[k] + mass_[ord[k]];
      diameter_ = std::max(diameter_, dist(c, ord[k]));
      if (ord[k] != c) min_positive_ = std::min(min_positive_, dist(c, ord[k]));
    }
    auto& bl = balls_[c];
    for (std::size_t k = 0; k < n_; ++k) {
      const double r = sorted_dist_[c * n_ + k];
      const std::size_t len = closed_count(c, r);
      if (bl.empty() || bl.back().len < len) bl.push_back({len, r});
    }
  }
}

std::size_t Space::closed_count(Index c, double r) const {
  const auto sd = sorted_dist(c);
  return static_cast<std::size_t>(std::upper_bound(sd.begin(), sd.end(), r + kTol) - sd.begin());
}

std::size_t Space::open_count(Index c, double r) const {
  const auto sd = sorted_dist(c);
  return static_cast<std::size_t>(std::lower_bound(sd.begin(), sd.end(), r - kTol) - sd.begin());
}

bool Ball::contains(Index x) const { return std::binary_search(members.begin(), members.end(), x); }

Ball ball(const Space& space, Index center, double radius) {
  if (center >= space.size()) throw Error("ball: centre out of range");
  if (radius < 0.0) throw Error("ball: negative radius");
  const std::size_t k = space.closed_count(center, radius);
  const auto ord = space.order(center);
  Ball b;
  b.center = center;
  b.radius = radius;
  b.members.assign(ord.begin(), ord.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(b.members.begin(), b.members.end());
  b.measure = space.prefix_mass(center)[k];
  return b;
}

}  // namespace lochardy
