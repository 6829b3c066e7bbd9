#pragma once

// Data-parallel inner loops used by the mask algebra, the metrics and the
// blending stages. Every routine has a portable scalar reference; wider
// variants must be bit-identical to it (tests/test_simd.cpp enforces this),
// so the instruction set chosen at runtime never changes any output byte.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace selfpair::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

struct MaskTally {
  std::uint64_t both = 0;       // a=1, b=1
  std::uint64_t only_a = 0;     // a=1, b=0
  std::uint64_t only_b = 0;     // a=0, b=1

  friend bool operator==(const MaskTally&, const MaskTally&) = default;
};

struct KernelTable {
  Isa isa;
  void (*xor_bytes)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
  void (*and_bytes)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
  void (*or_bytes)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
  /// Inputs must be 0/1 bytes.
  MaskTally (*tally)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
  /// out = round(alpha * fg + (1 - alpha) * bg), alpha per element in [0, 1].
  void (*alpha_blend)(const std::uint8_t* bg, const std::uint8_t* fg, const double* alpha,
                      std::uint8_t* out, std::size_t n);
  /// out = clamp(floor(in + 0.5), 0, 255).
  void (*quantize)(const double* in, std::uint8_t* out, std::size_t n);
};

bool isa_available(Isa isa) noexcept;

/// Table for a specific ISA; falls back to scalar when it is unavailable.
const KernelTable& kernels(Isa isa) noexcept;

/// Table selected once per process: the widest available ISA, unless the
/// SELF_PAIR_SIMD environment variable is set to "scalar".
const KernelTable& kernels() noexcept;

namespace detail {
extern const KernelTable scalar_table;
#if defined(SELFPAIR_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace selfpair::simd
