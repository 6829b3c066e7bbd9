#include "selfpair/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "selfpair/error.hpp"

namespace selfpair {

namespace {

// Plain product; std::complex's operator* carries inf/nan recovery that
// dominates the butterfly cost.
inline Complex mul(const Complex& a, const Complex& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

class Radix2 {
 public:
  explicit Radix2(std::size_t n) : n_(n), twiddle_(n / 2), rev_(n) {
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = Complex(std::cos(a), std::sin(a));
    }
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      rev_[i] = r;
    }
  }

  // Forward, unnormalized.
  void run(std::span<Complex> x) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (i < rev_[i]) std::swap(x[i], x[rev_[i]]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t step = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const Complex u = x[start + k];
          const Complex v = mul(x[start + k + half], twiddle_[k * step]);
          x[start + k] = u + v;
          x[start + k + half] = u - v;
        }
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<Complex> twiddle_;
  std::vector<std::size_t> rev_;
};

// Chirp-z: X_k = conj(w_k) * sum_j (x_j conj(w_j)) w_{k-j}, w_j = exp(i pi j^2 / n).
class Bluestein {
 public:
  explicit Bluestein(std::size_t n) : n_(n), m_(next_pow2(2 * n - 1)), inner_(m_), chirp_(n), kernel_(m_) {
    for (std::size_t j = 0; j < n; ++j) {
      // j^2 mod 2n keeps the angle small and exact.
      const std::size_t j2 = (j * j) % (2 * n);
      const double a = std::numbers::pi * static_cast<double>(j2) / static_cast<double>(n);
      chirp_[j] = Complex(std::cos(a), std::sin(a));
    }
    kernel_[0] = chirp_[0];
    for (std::size_t j = 1; j < n; ++j) kernel_[j] = kernel_[m_ - j] = chirp_[j];
    inner_.run(kernel_);
  }

  void run(std::span<Complex> x) const {
    std::vector<Complex> buf(m_);
    for (std::size_t j = 0; j < n_; ++j) buf[j] = mul(x[j], std::conj(chirp_[j]));
    inner_.run(buf);
    for (std::size_t k = 0; k < m_; ++k) buf[k] = std::conj(mul(buf[k], kernel_[k]));
    inner_.run(buf);  // conj(fft(conj(.))) = m * ifft
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) x[k] = mul(std::conj(buf[k]) * scale, std::conj(chirp_[k]));
  }

 private:
  std::size_t n_;
  std::size_t m_;
  Radix2 inner_;
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_;
};

class Plan {
 public:
  explicit Plan(std::size_t n) {
    if (is_pow2(n)) {
      radix2_ = std::make_unique<Radix2>(n);
    } else {
      bluestein_ = std::make_unique<Bluestein>(n);
    }
  }
  void forward(std::span<Complex> x) const {
    if (radix2_) {
      radix2_->run(x);
    } else {
      bluestein_->run(x);
    }
  }

 private:
  std::unique_ptr<Radix2> radix2_;
  std::unique_ptr<Bluestein> bluestein_;
};

const Plan& plan_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Plan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Plan>(n);
  return *slot;
}

void transform2d(std::vector<Complex>& data, int width, int height, bool inverse) {
  std::vector<Complex> column(static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r) {
    fft1d(std::span(data).subspan(static_cast<std::size_t>(r) * width, width), inverse);
  }
  for (int c = 0; c < width; ++c) {
    for (int r = 0; r < height; ++r) column[r] = data[static_cast<std::size_t>(r) * width + c];
    fft1d(column, inverse);
    for (int r = 0; r < height; ++r) data[static_cast<std::size_t>(r) * width + c] = column[r];
  }
}

}  // namespace

void fft1d(std::span<Complex> data, bool inverse) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  const Plan& plan = plan_for(n);
  if (!inverse) {
    plan.forward(data);
    return;
  }
  for (auto& v : data) v = std::conj(v);
  plan.forward(data);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : data) v = std::conj(v) * scale;
}

Spectrum fft2(const RealGrid& grid) {
  if (grid.width < 1 || grid.height < 1 ||
      grid.values.size() != static_cast<std::size_t>(grid.width) * grid.height) {
    throw Error(ErrorCode::InvalidArgument, "fft2: malformed grid");
  }
  Spectrum s{grid.width, grid.height, std::vector<Complex>(grid.values.begin(), grid.values.end())};
  transform2d(s.coeffs, s.width, s.height, false);
  return s;
}

std::vector<Complex> ifft2(const Spectrum& spectrum) {
  std::vector<Complex> data = spectrum.coeffs;
  transform2d(data, spectrum.width, spectrum.height, true);
  return data;
}

RealGrid ifft2_real(const Spectrum& spectrum) {
  const auto data = ifft2(spectrum);
  RealGrid out{spectrum.width, spectrum.height, std::vector<double>(data.size())};
  for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i].real();
  return out;
}

AmpPhase amp_phase(const Spectrum& spectrum) {
  AmpPhase out{{spectrum.width, spectrum.height, std::vector<double>(spectrum.coeffs.size())},
               {spectrum.width, spectrum.height, std::vector<double>(spectrum.coeffs.size())}};
  for (std::size_t i = 0; i < spectrum.coeffs.size(); ++i) {
    const Complex z = spectrum.coeffs[i];
    out.amplitude.values[i] = std::abs(z);
    out.phase.values[i] = (z == Complex(0.0, 0.0)) ? 0.0 : std::arg(z);
  }
  return out;
}

Spectrum recompose(const RealGrid& amplitude, const RealGrid& phase) {
  if (amplitude.width != phase.width || amplitude.height != phase.height) {
    throw Error(ErrorCode::DimensionMismatch, "recompose: amplitude and phase grids differ");
  }
  Spectrum s{amplitude.width, amplitude.height, std::vector<Complex>(amplitude.values.size())};
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    s.coeffs[i] = std::polar(amplitude.values[i], phase.values[i]);
  }
  return s;
}

}  // namespace selfpair
