#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>

namespace chowla {

/// Exact Gaussian integer re + i·im.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r) : re(r) {}  // NOLINT(google-explicit-constructor)
  constexpr GaussInt(std::int64_t r, std::int64_t i) : re(r), im(i) {}

  static constexpr GaussInt i() { return {0, 1}; }

  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr GaussInt conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
  double abs() const { return std::abs(to_complex()); }

  constexpr GaussInt& operator+=(GaussInt o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  constexpr GaussInt& operator-=(GaussInt o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return a += b; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return a -= b; }
  friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(GaussInt, GaussInt) = default;

  std::string to_string() const {
    if (im == 0) return std::to_string(re);
    std::string s = re != 0 ? std::to_string(re) : "";
    if (im > 0 && re != 0) s += "+";
    if (im == 1) return s + "i";
    if (im == -1) return s + "-i";
    return s + std::to_string(im) + "i";
  }
};

inline std::ostream& operator<<(std::ostream& os, GaussInt g) { return os << g.to_string(); }

/// Uniform access to exact and floating coefficients.
template <typename C>
struct CoeffTraits;

template <>
struct CoeffTraits<GaussInt> {
  static constexpr bool exact = true;
  static bool is_zero(GaussInt c) { return c.is_zero(); }
  static GaussInt conj(GaussInt c) { return c.conj(); }
  static std::complex<double> to_complex(GaussInt c) { return c.to_complex(); }
  static double abs(GaussInt c) { return c.abs(); }
  static GaussInt one() { return GaussInt{1}; }
};

template <>
struct CoeffTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static bool is_zero(std::complex<double> c) { return c.real() == 0.0 && c.imag() == 0.0; }
  static std::complex<double> conj(std::complex<double> c) { return std::conj(c); }
  static std::complex<double> to_complex(std::complex<double> c) { return c; }
  static double abs(std::complex<double> c) { return std::abs(c); }
  static std::complex<double> one() { return {1.0, 0.0}; }
};

}  // namespace chowla
