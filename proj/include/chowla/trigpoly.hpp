#pragma once

// Sparse trigonometric polynomials stored on the Fourier side:
// f(x) = Σ_m c_m e(mx), e(x) = exp(2πix), x ∈ T = R/Z.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "chowla/error.hpp"
#include "chowla/fft.hpp"
#include "chowla/gaussian.hpp"
#include "chowla/report.hpp"
#include "chowla/setcore.hpp"

namespace chowla {

using cplx = std::complex<double>;

/// e(m x) with the phase reduced mod 1 before the trigonometric call.
inline cplx unit_phase(Int m, double x) {
  double p = static_cast<double>(m) * x;
  p -= std::round(p);
  const double ang = 2.0 * std::numbers::pi * p;
  return {std::cos(ang), std::sin(ang)};
}

template <typename C>
class TrigPoly {
  using Tr = CoeffTraits<C>;

 public:
  using coeff_type = C;
  using map_type = std::map<Int, C>;

  TrigPoly() = default;
  explicit TrigPoly(map_type coeffs) : coeffs_(std::move(coeffs)) { prune(); }

  const map_type& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t terms() const noexcept { return coeffs_.size(); }

  C coeff(Int m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? C{} : it->second;
  }

  /// N = max |frequency|.
  Int degree() const {
    if (coeffs_.empty()) return 0;
    return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
  }

  /// Hermitian symmetry c(-m) = conj c(m); exact for Gaussian integers and
  /// up to rel_tol·Σ|c| for floating coefficients.
  bool is_real(double rel_tol = 1e-12) const {
    const double scale = rel_tol * std::max(1.0, abs_sum());
    for (const auto& [m, c] : coeffs_) {
      const C mirror = coeff(-m);
      if constexpr (Tr::exact) {
        if (!(mirror == Tr::conj(c))) return false;
      } else {
        if (std::abs(mirror - Tr::conj(c)) > scale) return false;
      }
    }
    return true;
  }

  bool mean_zero() const { return Tr::is_zero(coeff(0)); }

  /// Σ |c_m|, an upper bound for ‖f‖_∞.
  double abs_sum() const {
    double s = 0.0;
    for (const auto& [m, c] : coeffs_) s += Tr::abs(c);
    return s;
  }

  /// Bound on |f^{(k)}|: Σ (2π|m|)^k |c_m|.
  double derivative_bound(int k) const {
    double s = 0.0;
    for (const auto& [m, c] : coeffs_) s += std::pow(2.0 * std::numbers::pi * std::abs(static_cast<double>(m)), k) * Tr::abs(c);
    return s;
  }

  cplx eval(double x) const {
    cplx s{};
    for (const auto& [m, c] : coeffs_) s += Tr::to_complex(c) * unit_phase(m, x);
    return s;
  }

  /// Real value of a real-valued polynomial; the imaginary residue is checked.
  double eval_real(double x) const {
    const cplx v = eval(x);
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, abs_sum())) {
      throw Error(ErrorCode::NotRealValued, "imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
  }

  cplx eval_derivative(double x) const {
    cplx s{};
    for (const auto& [m, c] : coeffs_)
      s += Tr::to_complex(c) * cplx(0.0, 2.0 * std::numbers::pi * static_cast<double>(m)) * unit_phase(m, x);
    return s;
  }

  /// Values at x_j = j/M for any M >= 1 (frequencies folded mod M).
  fft::cvec samples(std::size_t grid) const {
    fft::cvec bins(grid);
    const Int g = static_cast<Int>(grid);
    for (const auto& [m, c] : coeffs_) bins[static_cast<std::size_t>(((m % g) + g) % g)] += Tr::to_complex(c);
    return fft::synthesize(bins);
  }

  TrigPoly<cplx> to_complex() const {
    typename TrigPoly<cplx>::map_type out;
    for (const auto& [m, c] : coeffs_) out.emplace(m, Tr::to_complex(c));
    return TrigPoly<cplx>(std::move(out));
  }

  /// Coefficientwise conjugate c_m -> conj(c_m).
  TrigPoly conj_coeffs() const {
    map_type out;
    for (const auto& [m, c] : coeffs_) out.emplace(m, Tr::conj(c));
    return TrigPoly(std::move(out));
  }

  /// e(tx)·f(x): every frequency moves by t.
  TrigPoly shifted(Int t) const {
    map_type out;
    for (const auto& [m, c] : coeffs_) out.emplace(m + t, c);
    return TrigPoly(std::move(out));
  }

  /// f(c·x) for integer c >= 1.
  TrigPoly dilated(Int c) const {
    map_type out;
    for (const auto& [m, v] : coeffs_) out.emplace(m * c, v);
    return TrigPoly(std::move(out));
  }

  TrigPoly& operator+=(const TrigPoly& o) {
    for (const auto& [m, c] : o.coeffs_) coeffs_[m] += c;
    prune();
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) {
    for (const auto& [m, c] : o.coeffs_) coeffs_[m] -= c;
    prune();
    return *this;
  }
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(const C& s, const TrigPoly& f) {
    map_type out;
    for (const auto& [m, c] : f.coeffs_) out.emplace(m, s * c);
    return TrigPoly(std::move(out));
  }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.coeffs_ == b.coeffs_; }

  static TrigPoly constant(const C& c) { return TrigPoly(map_type{{0, c}}); }

 private:
  void prune() { std::erase_if(coeffs_, [](const auto& kv) { return Tr::is_zero(kv.second); }); }

  map_type coeffs_;
};

using ExactPoly = TrigPoly<GaussInt>;
using ComplexPoly = TrigPoly<cplx>;

/// 1̂_A(x) = Σ_{a∈A} e(ax).
template <typename C = GaussInt>
TrigPoly<C> indicator(const IntSet& a) {
  typename TrigPoly<C>::map_type out;
  for (Int v : a) out.emplace(v, CoeffTraits<C>::one());
  return TrigPoly<C>(std::move(out));
}

/// Fourier-side convolution: coefficientwise product.
template <typename C>
TrigPoly<C> convolve(const TrigPoly<C>& f, const TrigPoly<C>& g) {
  typename TrigPoly<C>::map_type out;
  const auto& small = f.terms() <= g.terms() ? f : g;
  const auto& large = f.terms() <= g.terms() ? g : f;
  for (const auto& [m, c] : small.coeffs()) {
    auto it = large.coeffs().find(m);
    if (it != large.coeffs().end()) out.emplace(m, c * it->second);
  }
  return TrigPoly<C>(std::move(out));
}

/// m-fold self-convolution, conv_pow(f, 1) = f.
template <typename C>
TrigPoly<C> conv_pow(const TrigPoly<C>& f, unsigned m) {
  if (m == 0) throw Error(ErrorCode::PreconditionViolated, "conv_pow exponent must be >= 1");
  TrigPoly<C> out = f;
  for (unsigned k = 1; k < m; ++k) out = convolve(out, f);
  return out;
}

/// ⟨f, g⟩ = Σ_m f̂(m)·conj(ĝ(m)).
template <typename C>
cplx parseval_inner(const TrigPoly<C>& f, const TrigPoly<C>& g) {
  cplx s{};
  for (const auto& [m, c] : f.coeffs()) s += CoeffTraits<C>::to_complex(c) * std::conj(CoeffTraits<C>::to_complex(g.coeff(m)));
  return s;
}

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;        ///< dense-grid maximum of |f|
  double linf_upper = 0.0;  ///< certified: min(Σ|c|, grid max + Lipschitz slack)
  std::size_t grid_size = 0;
};

/// Grid used for sampling in norms(): 64 points per unit of degree, at least 4096.
inline std::size_t quadrature_grid(Int degree) {
  return fft::next_pow2(std::max<std::size_t>(4096, 64 * static_cast<std::size_t>(std::max<Int>(degree, 1))));
}

namespace detail {

/// Real trigonometric polynomial in the form c0 + Σ_{m>0} 2·Re(c_m e(mx)),
/// with its antiderivative F(x) = c0·x + Σ_{m>0} 2·Re(c_m e(mx) / (2πim)).
class RealSeries {
 public:
  template <typename C>
  explicit RealSeries(const TrigPoly<C>& f) : c0_(CoeffTraits<C>::to_complex(f.coeff(0)).real()) {
    for (const auto& [m, c] : f.coeffs())
      if (m > 0) terms_.emplace_back(m, CoeffTraits<C>::to_complex(c));
  }

  double value(double x) const {
    double s = c0_;
    for (const auto& [m, c] : terms_) s += 2.0 * (c * unit_phase(m, x)).real();
    return s;
  }

  double slope(double x) const {
    double s = 0.0;
    for (const auto& [m, c] : terms_)
      s += 2.0 * (c * cplx(0.0, 2.0 * std::numbers::pi * static_cast<double>(m)) * unit_phase(m, x)).real();
    return s;
  }

  double antiderivative(double x) const {
    double s = c0_ * x;
    for (const auto& [m, c] : terms_)
      s += 2.0 * (c * unit_phase(m, x) / cplx(0.0, 2.0 * std::numbers::pi * static_cast<double>(m))).real();
    return s;
  }

  double mean() const { return c0_; }

  /// Root of the sign change in [a, b] (value(a) >= 0 differs from value(b) >= 0),
  /// by Newton steps kept inside a shrinking bracket.
  double root(double a, double b, double fa) const {
    const bool pos_a = fa >= 0.0;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 100 && b - a > 4e-16; ++it) {
      const double v = value(x);
      if ((v >= 0.0) == pos_a) a = x; else b = x;
      const double d = slope(x);
      double next = d != 0.0 ? x - v / d : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::abs(next - x) < 1e-17) break;
      x = next;
    }
    return x;
  }

 private:
  double c0_;
  std::vector<std::pair<Int, cplx>> terms_;
};

/// ∫|f| over one period for real f. Sign changes are bracketed on the sample
/// grid; cells where the curvature bound admits an unseen pair of roots are
/// resampled finely. The integral between consecutive roots is |ΔF|.
inline double abs_integral_real(const RealSeries& f, const std::vector<double>& v, double l2) {
  const std::size_t n = v.size();
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> roots;
  auto scan = [&](double a, double fa, double b, double fb) {
    if ((fa >= 0.0) != (fb >= 0.0)) roots.push_back(f.root(a, b, fa));
  };
  for (std::size_t j = 0; j < n; ++j) {
    const double a = static_cast<double>(j) * h;
    const double fa = v[j];
    const double fb = v[(j + 1) % n];
    const bool same = (fa >= 0.0) == (fb >= 0.0);
    // On a cell with no sign change, |f| stays above min(|fa|, |fb|) - l2·h²/8.
    if (same && std::min(std::abs(fa), std::abs(fb)) <= 0.125 * l2 * h * h) {
      constexpr int kSub = 32;
      double x0 = a, f0 = fa;
      for (int k = 1; k <= kSub; ++k) {
        const double x1 = a + h * k / kSub;
        const double f1 = k == kSub ? fb : f.value(x1);
        scan(x0, f0, x1, f1);
        x0 = x1;
        f0 = f1;
      }
    } else {
      scan(a, fa, a + h, fb);
    }
  }
  if (roots.empty()) return std::abs(f.mean());
  double total = 0.0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double lo = roots[k];
    const double hi = k + 1 < roots.size() ? roots[k + 1] : roots[0] + 1.0;
    const double fhi = k + 1 < roots.size() ? f.antiderivative(hi) : f.antiderivative(roots[0]) + f.mean();
    total += std::abs(fhi - f.antiderivative(lo));
  }
  return total;
}

}  // namespace detail

template <typename C>
Norms norms(const TrigPoly<C>& f) {
  Norms out;
  if (f.is_zero()) return out;
  double sq = 0.0;
  for (const auto& [m, c] : f.coeffs()) sq += std::norm(CoeffTraits<C>::to_complex(c));
  out.l2 = std::sqrt(sq);

  const bool real = f.is_real();
  // |f| of a complex polynomial is integrated by the plain periodic trapezoid rule on a finer grid.
  const std::size_t grid = real ? quadrature_grid(f.degree())
                                : fft::next_pow2(std::min<std::size_t>(std::size_t{1} << 22,
                                                                       std::max<std::size_t>(std::size_t{1} << 16,
                                                                                             4096 * static_cast<std::size_t>(f.degree()))));
  out.grid_size = grid;
  const fft::cvec vals = f.samples(grid);
  double mx = 0.0;
  if (real) {
    std::vector<double> re(vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j) re[j] = vals[j].real();
    out.l1 = detail::abs_integral_real(detail::RealSeries(f), re, f.derivative_bound(2));
    for (double v : re) mx = std::max(mx, std::abs(v));
  } else {
    double s = 0.0;
    for (const auto& v : vals) {
      s += std::abs(v);
      mx = std::max(mx, std::abs(v));
    }
    out.l1 = s / static_cast<double>(grid);
  }
  out.linf = mx;
  const double lip = f.derivative_bound(1);
  out.linf_upper = std::min(f.abs_sum(), mx + lip / (2.0 * static_cast<double>(grid)));
  return out;
}

inline json to_json_poly(const ExactPoly& f) {
  json j = json::object();
  for (const auto& [m, c] : f.coeffs()) j[std::to_string(m)] = json::array({c.re, c.im});
  return j;
}

inline json to_json_poly(const ComplexPoly& f) {
  json j = json::object();
  for (const auto& [m, c] : f.coeffs()) {
    const bool integral = std::floor(c.real()) == c.real() && std::floor(c.imag()) == c.imag() &&
                          std::abs(c.real()) < 9e15 && std::abs(c.imag()) < 9e15;
    if (integral) {
      j[std::to_string(m)] = json::array({static_cast<std::int64_t>(c.real()), static_cast<std::int64_t>(c.imag())});
    } else {
      j[std::to_string(m)] = json::array({c.real(), c.imag()});
    }
  }
  return j;
}

/// Parses {freq: [re, im]}; integral entries give an exact polynomial.
inline ComplexPoly complex_poly_from_json(const json& j) {
  ComplexPoly::map_type out;
  for (const auto& [key, val] : j.items()) {
    if (!val.is_array() || val.size() != 2) throw Error(ErrorCode::ParseError, "coefficient must be [re, im]");
    out.emplace(std::stoll(key), cplx(val[0].get<double>(), val[1].get<double>()));
  }
  return ComplexPoly(std::move(out));
}

inline ExactPoly exact_poly_from_json(const json& j) {
  ExactPoly::map_type out;
  for (const auto& [key, val] : j.items()) {
    if (!val.is_array() || val.size() != 2 || !val[0].is_number_integer() || !val[1].is_number_integer()) {
      throw Error(ErrorCode::ParseError, "exact coefficient must be [int, int]");
    }
    out.emplace(std::stoll(key), GaussInt(val[0].get<std::int64_t>(), val[1].get<std::int64_t>()));
  }
  return ExactPoly(std::move(out));
}

}  // namespace chowla
