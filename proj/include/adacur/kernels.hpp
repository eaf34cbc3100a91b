#pragma once

// Dense double-precision inner-loop kernels.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active table is chosen once at first use from the
// CPU's reported features; ADACUR_SIMD=scalar in the environment forces the
// reference path.

#include <cstddef>
#include <string_view>

namespace adacur::kernels {

enum class SimdLevel { scalar, avx2 };

struct KernelTable {
  SimdLevel level;

  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);

  /// sum_i x[i]^2
  double (*sum_sq)(const double* x, std::size_t n);

  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  /// x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);

  /// Plane rotation applied to a pair of vectors:
  ///   x' = c*x - s*y,  y' = s*x + c*y
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);

  /// sum_i (x[i] - y[i])^2
  double (*sq_dist)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_table();

/// Returns nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();

bool cpu_has_avx2();

/// Table selected for this process.
const KernelTable& active();

std::string_view level_name(SimdLevel level);

}  // namespace adacur::kernels
