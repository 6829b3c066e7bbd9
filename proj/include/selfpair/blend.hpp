#pragma once

// Blending of a copy-pasted image back into its surroundings: low-frequency
// amplitude swap in the Fourier domain, or a Gaussian-feathered alpha matte.

#include <string_view>

#include "selfpair/fft.hpp"
#include "selfpair/image.hpp"

namespace selfpair {

enum class BlendMode { none, gaussian, fourier };

std::string_view to_string(BlendMode mode) noexcept;
BlendMode parse_blend_mode(std::string_view text);

struct BlendSpec {
  BlendMode mode = BlendMode::fourier;
  double beta = 0.05;
  double sigma = 2.0;

  void validate() const;
  friend bool operator==(const BlendSpec&, const BlendSpec&) = default;
};

/// Half-open index range [lo, hi) selected along one axis of the shifted
/// spectrum: lo = floor(c - beta*n/2), hi = ceil(c + beta*n/2), c = n/2.
struct BandRange {
  int lo = 0;
  int hi = 0;
};
BandRange beta_band(int n, double beta);

/// Low-frequency square of relative size beta, in unshifted (DC at 0) layout.
/// Values are 0/1, row-major height x width.
std::vector<std::uint8_t> beta_mask(int height, int width, double beta);

/// Float-domain result of the amplitude swap for one channel, before
/// clamping and rounding: amplitude from `original` where the mask is set,
/// from `cp` elsewhere, phase always from `cp`.
RealGrid fourier_blend_channel(const RealGrid& original, const RealGrid& cp,
                               const std::vector<std::uint8_t>& mask);

RasterImage fourier_blend(const RasterImage& original, const RasterImage& cp, double beta);

/// Normalized 1-D Gaussian taps, truncated at ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Blurred paste mask; border taps falling outside the grid are dropped and
/// the remaining weights renormalized, so a full mask stays exactly 1.
std::vector<double> feather(const SemanticMask& mask, double sigma);

RasterImage gaussian_blend(const RasterImage& original, const RasterImage& cp,
                           const SemanticMask& paste_mask, double sigma);

/// Dispatches on spec.mode; `none` returns cp unchanged.
RasterImage blend(const RasterImage& original, const RasterImage& cp,
                  const SemanticMask& paste_mask, const BlendSpec& spec);

}  // namespace selfpair
