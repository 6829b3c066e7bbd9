#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace selfpair {

/// Counter-based splittable generator. The stream is a pure function of the
/// key, so results never depend on the standard library's distribution code
/// and are identical across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform integer in [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Independent stream keyed by (this key, index); does not advance *this.
  SeededRng child(std::uint64_t index) const;

  /// k distinct indices from [0, n) in selection order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Generator for one sample; depends only on (global_seed, sample_index).
SeededRng derive_rng(std::uint64_t global_seed, std::uint64_t sample_index);

}  // namespace selfpair
