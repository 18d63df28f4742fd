#pragma once

// Weighted reductions over contiguous point data.
//
// Every maximal operator and norm in the library reduces to sums of the
// form  sum_i w_i * phi(v_i - c)  over the members of a ball, gathered into
// contiguous arrays in distance order. These kernels have a scalar reference
// implementation and an AVX2 variant; the active table is chosen once at
// startup from CPUID and can be pinned with LOCHARDY_SIMD=scalar|avx2.

#include <cstddef>
#include <span>
#include <string_view>

namespace lochardy::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // sum w_i v_i
  double (*weighted_sum)(const double* v, const double* w, std::size_t n);
  // sum w_i |v_i|
  double (*weighted_abs_sum)(const double* v, const double* w, std::size_t n);
  // sum w_i |v_i - c|
  double (*weighted_abs_dev)(const double* v, const double* w, std::size_t n, double c);
  // sum w_i (v_i - c)^2
  double (*weighted_sq_dev)(const double* v, const double* w, std::size_t n, double c);
  // max_i |v_i|
  double (*max_abs)(const double* v, std::size_t n);
  // y_i += a * x_i
  void (*axpy)(double* y, const double* x, double a, std::size_t n);
};

const KernelTable& scalar_table();
/// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

/// The table used by the library. Resolved once; thread-safe.
const KernelTable& active();
std::string_view isa_name(Isa isa);

inline double weighted_sum(std::span<const double> v, std::span<const double> w) {
  return active().weighted_sum(v.data(), w.data(), v.size());
}
inline double weighted_abs_sum(std::span<const double> v, std::span<const double> w) {
  return active().weighted_abs_sum(v.data(), w.data(), v.size());
}
inline double weighted_abs_dev(std::span<const double> v, std::span<const double> w, double c) {
  return active().weighted_abs_dev(v.data(), w.data(), v.size(), c);
}
inline double weighted_sq_dev(std::span<const double> v, std::span<const double> w, double c) {
  return active().weighted_sq_dev(v.data(), w.data(), v.size(), c);
}
inline double max_abs(std::span<const double> v) { return active().max_abs(v.data(), v.size()); }
inline void axpy(std::span<double> y, std::span<const double> x, double a) {
  active().axpy(y.data(), x.data(), a, y.size());
}

/// sum w_i |v_i - c|^q for general q >= 1; q = 1 and q = 2 route to the table.
double weighted_pow_dev(std::span<const double> v, std::span<const double> w, double c, double q);

}  // namespace lochardy::kernels
