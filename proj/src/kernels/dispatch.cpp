#include <cstdlib>

#include "spinsim/kernels.hpp"

namespace spinsim::kernels {

#if defined(SPINSIM_BUILD_AVX2)
const Ops& avx2_ops();  // defined in kernels_avx2.cpp

namespace {
bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
}  // namespace
#endif

const Ops* ops_by_name(std::string_view name) {
  if (name == "scalar") return &scalar_ops();
#if defined(SPINSIM_BUILD_AVX2)
  if (name == "avx2" && cpu_has_avx2()) return &avx2_ops();
#endif
  return nullptr;
}

const Ops& active_ops() {
  static const Ops* chosen = [] {
    if (const char* env = std::getenv("SPINSIM_KERNELS")) {
      if (const Ops* o = ops_by_name(env)) return o;
    }
#if defined(SPINSIM_BUILD_AVX2)
    if (cpu_has_avx2()) return &avx2_ops();
#endif
    return &scalar_ops();
  }();
  return *chosen;
}

}  // namespace spinsim::kernels
