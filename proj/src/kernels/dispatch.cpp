#include <cmath>
#include <cstdlib>
#include <string>

#include "lochardy/kernels.hpp"

namespace lochardy::kernels {

namespace {

const KernelTable& resolve() {
  const char* env = std::getenv("LOCHARDY_SIMD");
  const std::string want = env ? env : "";
  if (want == "scalar") return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = resolve();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

double weighted_pow_dev(std::span<const double> v, std::span<const double> w, double c, double q) {
  if (q == 1.0) return weighted_abs_dev(v, w, c);
  if (q == 2.0) return weighted_sq_dev(v, w, c);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::pow(std::fabs(v[i] - c), q);
  return s;
}

}  // namespace lochardy::kernels
