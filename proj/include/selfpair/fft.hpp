#pragma once

// 2-D discrete Fourier transform on arbitrary grid sizes: iterative radix-2
// for powers of two, Bluestein's chirp-z for everything else.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace selfpair {

using Complex = std::complex<double>;

struct RealGrid {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major

  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
};

/// Unnormalized forward transform of one channel; DC sits at (0, 0).
struct Spectrum {
  int width = 0;
  int height = 0;
  std::vector<Complex> coeffs;  // row-major

  const Complex& at(int row, int col) const {
    return coeffs[static_cast<std::size_t>(row) * width + col];
  }
};

/// In-place 1-D DFT; `inverse` applies the conjugate kernel and the 1/n factor.
void fft1d(std::span<Complex> data, bool inverse);

Spectrum fft2(const RealGrid& grid);
/// Inverse transform, complex result (the imaginary part is ~0 for Hermitian input).
std::vector<Complex> ifft2(const Spectrum& spectrum);
/// Real part of the inverse transform.
RealGrid ifft2_real(const Spectrum& spectrum);

struct AmpPhase {
  RealGrid amplitude;
  RealGrid phase;
};

/// |coef| and arg(coef); a zero coefficient has phase 0.
AmpPhase amp_phase(const Spectrum& spectrum);
Spectrum recompose(const RealGrid& amplitude, const RealGrid& phase);

}  // namespace selfpair
