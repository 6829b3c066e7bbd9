#if defined(__x86_64__) || defined(_M_X64)
#ifndef __AVX2__
#error "this should be compiled with AVX2"
#endif

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "selfpair/simd/kernels.hpp"

namespace selfpair::simd {
namespace {

template <class Op, class Tail>
inline void bytewise(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                     std::size_t n, Op op, Tail tail) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), op(va, vb));
  }
  for (; i < n; ++i) out[i] = tail(a[i], b[i]);
}

void xor_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  bytewise(a, b, out, n, [](__m256i x, __m256i y) { return _mm256_xor_si256(x, y); },
           [](std::uint8_t x, std::uint8_t y) { return static_cast<std::uint8_t>(x ^ y); });
}

void and_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  bytewise(a, b, out, n, [](__m256i x, __m256i y) { return _mm256_and_si256(x, y); },
           [](std::uint8_t x, std::uint8_t y) { return static_cast<std::uint8_t>(x & y); });
}

void or_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  bytewise(a, b, out, n, [](__m256i x, __m256i y) { return _mm256_or_si256(x, y); },
           [](std::uint8_t x, std::uint8_t y) { return static_cast<std::uint8_t>(x | y); });
}

inline std::uint64_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

MaskTally tally(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i both = zero, only_a = zero, only_b = zero;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // sad against zero sums each group of 8 bytes into a 64-bit lane.
    both = _mm256_add_epi64(both, _mm256_sad_epu8(_mm256_and_si256(va, vb), zero));
    only_a = _mm256_add_epi64(only_a, _mm256_sad_epu8(_mm256_andnot_si256(vb, va), zero));
    only_b = _mm256_add_epi64(only_b, _mm256_sad_epu8(_mm256_andnot_si256(va, vb), zero));
  }
  MaskTally t{hsum_epi64(both), hsum_epi64(only_a), hsum_epi64(only_b)};
  for (; i < n; ++i) {
    t.both += a[i] & b[i];
    t.only_a += a[i] & (b[i] ^ 1u);
    t.only_b += (a[i] ^ 1u) & b[i];
  }
  return t;
}

inline __m256d load4_u8(const std::uint8_t* p) {
  std::int32_t word;
  std::memcpy(&word, p, 4);
  return _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(_mm_cvtsi32_si128(word)));
}

inline void store4_u8(std::uint8_t* p, __m256d v) {
  const __m128i i32 = _mm256_cvttpd_epi32(v);
  const __m128i i16 = _mm_packus_epi32(i32, i32);
  const __m128i u8 = _mm_packus_epi16(i16, i16);
  const std::int32_t word = _mm_cvtsi128_si32(u8);
  std::memcpy(p, &word, 4);
}

// floor(v + 0.5) clamped to [0, 255]; same operation order as the scalar path.
inline __m256d round_clamp(__m256d v) {
  const __m256d r = _mm256_floor_pd(_mm256_add_pd(v, _mm256_set1_pd(0.5)));
  return _mm256_min_pd(_mm256_max_pd(r, _mm256_setzero_pd()), _mm256_set1_pd(255.0));
}

void alpha_blend(const std::uint8_t* bg, const std::uint8_t* fg, const double* alpha,
                 std::uint8_t* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(alpha + i);
    const __m256d f = load4_u8(fg + i);
    const __m256d b = load4_u8(bg + i);
    const __m256d v = _mm256_add_pd(_mm256_mul_pd(a, f), _mm256_mul_pd(_mm256_sub_pd(one, a), b));
    store4_u8(out + i, round_clamp(v));
  }
  for (; i < n; ++i) {
    const double a = alpha[i];
    const double v = a * static_cast<double>(fg[i]) + (1.0 - a) * static_cast<double>(bg[i]);
    out[i] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  }
}

void quantize(const double* in, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4_u8(out + i, round_clamp(_mm256_loadu_pd(in + i)));
  for (; i < n; ++i) {
    out[i] = static_cast<std::uint8_t>(std::clamp(std::floor(in[i] + 0.5), 0.0, 255.0));
  }
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::avx2, xor_bytes, and_bytes, or_bytes,
                             tally,     alpha_blend, quantize};
}  // namespace detail

}  // namespace selfpair::simd

#endif  // x86-64
