#include <algorithm>
#include <cmath>

#include "selfpair/simd/kernels.hpp"

namespace selfpair::simd {
namespace {

void xor_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] ^ b[i];
}

void and_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void or_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

MaskTally tally(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  MaskTally t;
  for (std::size_t i = 0; i < n; ++i) {
    t.both += a[i] & b[i];
    t.only_a += a[i] & (b[i] ^ 1u);
    t.only_b += (a[i] ^ 1u) & b[i];
  }
  return t;
}

void alpha_blend(const std::uint8_t* bg, const std::uint8_t* fg, const double* alpha,
                 std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = alpha[i];
    const double v = a * static_cast<double>(fg[i]) + (1.0 - a) * static_cast<double>(bg[i]);
    out[i] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  }
}

void quantize(const double* in, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint8_t>(std::clamp(std::floor(in[i] + 0.5), 0.0, 255.0));
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, xor_bytes, and_bytes, or_bytes,
                               tally,       alpha_blend, quantize};
}  // namespace detail

}  // namespace selfpair::simd
