#include <cstdlib>
#include <string_view>

#include "adacur/kernels.hpp"

namespace adacur::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("ADACUR_SIMD"); forced != nullptr) {
    if (std::string_view(forced) == "scalar") return scalar_table();
  }
  if (const KernelTable* t = avx2_table(); t != nullptr && cpu_has_avx2()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::string_view level_name(SimdLevel level) {
  switch (level) {
    case SimdLevel::scalar:
      return "scalar";
    case SimdLevel::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace adacur::kernels
