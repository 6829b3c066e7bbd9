#include "selfpair/labelgen.hpp"

#include <vector>

#include "selfpair/simd/kernels.hpp"

namespace selfpair {

namespace {

using ByteOp = void (*)(const std::uint8_t*, const std::uint8_t*, std::uint8_t*, std::size_t);

SemanticMask combine(const SemanticMask& a, const SemanticMask& b, ByteOp op, const char* what) {
  require_same_dims(a, b, what);
  std::vector<std::uint8_t> out(a.size());
  op(a.data().data(), b.data().data(), out.data(), out.size());
  return SemanticMask(a.width(), a.height(), std::move(out));
}

}  // namespace

SemanticMask xor_change(const SemanticMask& a, const SemanticMask& b) {
  return combine(a, b, simd::kernels().xor_bytes, "xor_change");
}

SemanticMask mask_and(const SemanticMask& a, const SemanticMask& b) {
  return combine(a, b, simd::kernels().and_bytes, "mask_and");
}

SemanticMask mask_or(const SemanticMask& a, const SemanticMask& b) {
  return combine(a, b, simd::kernels().or_bytes, "mask_or");
}

SemanticMask mask_not(const SemanticMask& a) {
  std::vector<std::uint8_t> out(a.data().begin(), a.data().end());
  for (auto& v : out) v ^= 1u;
  return SemanticMask(a.width(), a.height(), std::move(out));
}

SemanticMask erase_change(const SemanticMask& label, const SemanticMask& kept) {
  require_same_dims(label, kept, "erase_change");
  return xor_change(label, mask_and(label, kept));
}

}  // namespace selfpair
