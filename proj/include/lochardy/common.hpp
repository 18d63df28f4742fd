#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lochardy {

/// Absolute tolerance used for every distance, mass and inequality comparison.
inline constexpr double kTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Index = std::size_t;
using PointSet = std::vector<Index>;  // sorted ascending, no duplicates

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real-valued function on the points of a finite space.
class FnOnSpace {
 public:
  FnOnSpace() = default;
  explicit FnOnSpace(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit FnOnSpace(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error("FnOnSpace: non-finite value");
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }
  double& operator[](Index i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  FnOnSpace& operator+=(const FnOnSpace& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  FnOnSpace& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }
  friend FnOnSpace operator+(FnOnSpace a, const FnOnSpace& b) { return a += b; }
  friend FnOnSpace operator*(double s, FnOnSpace a) { return a *= s; }
  FnOnSpace abs() const {
    FnOnSpace r = *this;
    for (double& v : r.values_) v = std::fabs(v);
    return r;
  }
  bool is_zero() const {
    for (double v : values_) {
      if (v != 0.0) return false;
    }
    return true;
  }

 private:
  std::vector<double> values_;
};

/// Hölder conjugate exponent; p = inf maps to 1 and p = 1 maps to inf.
inline double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

/// 1/p' written so that p = inf gives exactly 1.
inline double inv_conjugate(double p) { return std::isinf(p) ? 1.0 : (p - 1.0) / p; }

/// lhs <= rhs up to an absolute-plus-relative slack of kTol.
inline bool leq_tol(double lhs, double rhs, double rel = kTol) {
  return lhs <= rhs + kTol + rel * std::fabs(rhs);
}

}  // namespace lochardy
