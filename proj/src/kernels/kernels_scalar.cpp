#include <cmath>

#include "lochardy/kernels.hpp"

namespace lochardy::kernels {
namespace {

double sum_scalar(const double* v, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i];
  return s;
}

double abs_sum_scalar(const double* v, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::fabs(v[i]);
  return s;
}

double abs_dev_scalar(const double* v, const double* w, std::size_t n, double c) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::fabs(v[i] - c);
  return s;
}

double sq_dev_scalar(const double* v, const double* w, std::size_t n, double c) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = v[i] - c;
    s += w[i] * d * d;
  }
  return s;
}

double max_abs_scalar(const double* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(v[i]));
  return m;
}

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,   sum_scalar,     abs_sum_scalar, abs_dev_scalar,
                                 sq_dev_scalar, max_abs_scalar, axpy_scalar};
  return table;
}

}  // namespace lochardy::kernels
