#include "selfpair/blend.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "selfpair/simd/kernels.hpp"

namespace selfpair {

std::string_view to_string(BlendMode mode) noexcept {
  switch (mode) {
    case BlendMode::none: return "none";
    case BlendMode::gaussian: return "gaussian";
    case BlendMode::fourier: return "fourier";
  }
  return "unknown";
}

BlendMode parse_blend_mode(std::string_view text) {
  if (text == "none") return BlendMode::none;
  if (text == "gaussian") return BlendMode::gaussian;
  if (text == "fourier") return BlendMode::fourier;
  throw Error(ErrorCode::InvalidArgument, "unknown blend mode '" + std::string(text) + "'");
}

void BlendSpec::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be in [0, 1]");
  }
  if (mode == BlendMode::gaussian && !(sigma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be > 0 for gaussian blending");
  }
}

BandRange beta_band(int n, double beta) {
  const double center = static_cast<double>(n / 2);
  const double half = beta * static_cast<double>(n) / 2.0;
  const int lo = std::max(0, static_cast<int>(std::floor(center - half)));
  const int hi = std::min(n, static_cast<int>(std::ceil(center + half)));
  return {lo, std::max(lo, hi)};
}

std::vector<std::uint8_t> beta_mask(int height, int width, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "beta must be in [0, 1]");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(height) * width, 0);
  const BandRange rows = beta_band(height, beta);
  const BandRange cols = beta_band(width, beta);
  // Shifted index s holds unshifted frequency (s - n/2) mod n.
  for (int sr = rows.lo; sr < rows.hi; ++sr) {
    const int ur = ((sr - height / 2) % height + height) % height;
    for (int sc = cols.lo; sc < cols.hi; ++sc) {
      const int uc = ((sc - width / 2) % width + width) % width;
      mask[static_cast<std::size_t>(ur) * width + uc] = 1;
    }
  }
  return mask;
}

RealGrid fourier_blend_channel(const RealGrid& original, const RealGrid& cp,
                               const std::vector<std::uint8_t>& mask) {
  require_same_dims(original.width, original.height, cp.width, cp.height, "fourier_blend");
  const Spectrum so = fft2(original);
  Spectrum sc = fft2(cp);
  for (std::size_t i = 0; i < sc.coeffs.size(); ++i) {
    if (!mask[i]) continue;
    // Keep cp's phase, take the original's amplitude.
    const double amp = std::abs(so.coeffs[i]);
    const Complex z = sc.coeffs[i];
    const double phase = (z == Complex(0.0, 0.0)) ? 0.0 : std::arg(z);
    sc.coeffs[i] = std::polar(amp, phase);
  }
  return ifft2_real(sc);
}

namespace {

RealGrid channel_of(const RasterImage& img, int k) {
  RealGrid g{img.width(), img.height(), std::vector<double>(img.pixel_count())};
  const auto data = img.data();
  const int ch = img.channels();
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = data[i * ch + k];
  return g;
}

void require_compatible(const RasterImage& a, const RasterImage& b, const char* what) {
  require_same_dims(a, b, what);
  if (a.channels() != b.channels()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": channel counts differ");
  }
}

}  // namespace

RasterImage fourier_blend(const RasterImage& original, const RasterImage& cp, double beta) {
  require_compatible(original, cp, "fourier_blend");
  const auto mask = beta_mask(cp.height(), cp.width(), beta);
  const int ch = cp.channels();
  std::vector<double> interleaved(cp.pixel_count() * ch);
  for (int k = 0; k < ch; ++k) {
    const RealGrid out = fourier_blend_channel(channel_of(original, k), channel_of(cp, k), mask);
    for (std::size_t i = 0; i < out.values.size(); ++i) interleaved[i * ch + k] = out.values[i];
  }
  std::vector<std::uint8_t> bytes(interleaved.size());
  simd::kernels().quantize(interleaved.data(), bytes.data(), bytes.size());
  return RasterImage(cp.width(), cp.height(), ch, std::move(bytes));
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    taps[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (auto& v : taps) v /= sum;
  return taps;
}

std::vector<double> feather(const SemanticMask& mask, double sigma) {
  const auto taps = gaussian_kernel(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = mask.width();
  const int h = mask.height();
  const auto src = mask.data();

  auto pass = [&](const auto& input, std::vector<double>& out, bool along_rows) {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        double num = 0.0, den = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          const int rr = along_rows ? r : r + k;
          const int cc = along_rows ? c + k : c;
          if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
          const double wt = taps[static_cast<std::size_t>(k + radius)];
          num += wt * static_cast<double>(input[static_cast<std::size_t>(rr) * w + cc]);
          den += wt;
        }
        out[static_cast<std::size_t>(r) * w + c] = num / den;
      }
    }
  };
  std::vector<double> tmp(src.size()), alpha(src.size());
  pass(src, tmp, true);
  pass(tmp, alpha, false);
  return alpha;
}

RasterImage gaussian_blend(const RasterImage& original, const RasterImage& cp,
                           const SemanticMask& paste_mask, double sigma) {
  require_compatible(original, cp, "gaussian_blend");
  require_same_dims(cp, paste_mask, "gaussian_blend");
  const auto alpha = feather(paste_mask, sigma);
  const int ch = cp.channels();
  std::vector<double> per_sample(alpha.size() * ch);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int k = 0; k < ch; ++k) per_sample[i * ch + k] = alpha[i];
  }
  std::vector<std::uint8_t> out(per_sample.size());
  simd::kernels().alpha_blend(original.data().data(), cp.data().data(), per_sample.data(),
                              out.data(), out.size());
  return RasterImage(cp.width(), cp.height(), ch, std::move(out));
}

RasterImage blend(const RasterImage& original, const RasterImage& cp,
                  const SemanticMask& paste_mask, const BlendSpec& spec) {
  spec.validate();
  switch (spec.mode) {
    case BlendMode::none:
      require_compatible(original, cp, "blend");
      return cp;
    case BlendMode::gaussian: return gaussian_blend(original, cp, paste_mask, spec.sigma);
    case BlendMode::fourier: return fourier_blend(original, cp, spec.beta);
  }
  return cp;
}

}  // namespace selfpair
