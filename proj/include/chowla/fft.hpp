#pragma once

// Thin wrapper around Eigen's FFT using the Fourier-series sign convention:
// synthesis y_j = Σ_k c_k e(kj/M), analysis c_k = (1/M) Σ_j y_j e(-kj/M).

#include <complex>
#include <cstddef>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace chowla::fft {

using cvec = std::vector<std::complex<double>>;

constexpr bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

constexpr std::size_t next_pow2(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

inline cvec synthesize(const cvec& bins) {
  Eigen::FFT<double> engine;
  engine.SetFlag(Eigen::FFT<double>::Unscaled);
  cvec out(bins.size());
  engine.inv(out, bins);
  return out;
}

inline cvec analyze(const cvec& samples) {
  Eigen::FFT<double> engine;
  cvec out(samples.size());
  engine.fwd(out, samples);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace chowla::fft
