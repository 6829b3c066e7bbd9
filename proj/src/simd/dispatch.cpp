#include <cstdlib>
#include <string_view>

#include "selfpair/simd/kernels.hpp"

namespace selfpair::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SELFPAIR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Isa isa) noexcept {
#if defined(SELFPAIR_HAVE_AVX2)
  if (isa == Isa::avx2 && isa_available(Isa::avx2)) return detail::avx2_table;
#endif
  (void)isa;
  return detail::scalar_table;
}

const KernelTable& kernels() noexcept {
  static const KernelTable& active = [] () -> const KernelTable& {
    const char* forced = std::getenv("SELF_PAIR_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return detail::scalar_table;
    return kernels(Isa::avx2);
  }();
  return active;
}

}  // namespace selfpair::simd
