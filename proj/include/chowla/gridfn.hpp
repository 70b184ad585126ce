#pragma once

// Functions on T sampled at x_j = j/M, for objects that are not trigonometric
// polynomials (positive/negative parts, absolute values, clipped pieces).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

#include "chowla/certify.hpp"
#include "chowla/config.hpp"
#include "chowla/error.hpp"
#include "chowla/fft.hpp"
#include "chowla/report.hpp"
#include "chowla/setcore.hpp"
#include "chowla/trigpoly.hpp"

namespace chowla {

class GridFn {
 public:
  GridFn() = default;

  explicit GridFn(fft::cvec samples) : v_(std::move(samples)) {
    if (!fft::is_pow2(v_.size())) throw Error(ErrorCode::GridTooSmall, "grid size must be a power of two");
  }

  static GridFn zeros(std::size_t m) { return GridFn(fft::cvec(m)); }

  static GridFn from_real(const std::vector<double>& re) {
    fft::cvec v(re.size());
    for (std::size_t j = 0; j < re.size(); ++j) v[j] = re[j];
    return GridFn(std::move(v));
  }

  std::size_t size() const noexcept { return v_.size(); }
  const fft::cvec& samples() const noexcept { return v_; }
  const cplx& operator[](std::size_t j) const { return v_[j]; }
  double point(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(v_.size()); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : v_) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_real() const {
    const double scale = 1e-10 * max_abs();
    for (const auto& z : v_)
      if (std::abs(z.imag()) > scale) return false;
    return true;
  }

  std::vector<double> real_part() const {
    std::vector<double> out(v_.size());
    for (std::size_t j = 0; j < v_.size(); ++j) out[j] = v_[j].real();
    return out;
  }

  cplx mean() const {
    cplx s{};
    for (const auto& z : v_) s += z;
    return v_.empty() ? s : s / static_cast<double>(v_.size());
  }

  /// Sample mean of |g|.
  double l1() const {
    double s = 0.0;
    for (const auto& z : v_) s += std::abs(z);
    return v_.empty() ? 0.0 : s / static_cast<double>(v_.size());
  }

  GridFn abs() const {
    fft::cvec out(v_.size());
    for (std::size_t j = 0; j < v_.size(); ++j) out[j] = std::abs(v_[j]);
    return GridFn(std::move(out));
  }

  /// e(t x_j)·g(x_j).
  GridFn modulated(Int t) const {
    fft::cvec out(v_.size());
    for (std::size_t j = 0; j < v_.size(); ++j) out[j] = v_[j] * unit_phase(t, point(j));
    return GridFn(std::move(out));
  }

  /// Fourier coefficients on frequencies (-M/2, M/2].
  ComplexPoly to_poly(double drop_below = 0.0) const {
    const fft::cvec bins = fft::analyze(v_);
    const Int m = static_cast<Int>(v_.size());
    ComplexPoly::map_type out;
    for (Int k = 0; k < m; ++k) {
      const cplx c = bins[static_cast<std::size_t>(k)];
      if (std::abs(c) <= drop_below) continue;
      out.emplace(k > m / 2 ? k - m : k, c);
    }
    return ComplexPoly(std::move(out));
  }

  GridFn& operator+=(const GridFn& o) {
    require_same(o);
    for (std::size_t j = 0; j < v_.size(); ++j) v_[j] += o.v_[j];
    return *this;
  }
  GridFn& operator-=(const GridFn& o) {
    require_same(o);
    for (std::size_t j = 0; j < v_.size(); ++j) v_[j] -= o.v_[j];
    return *this;
  }
  friend GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
  friend GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
  friend GridFn operator*(cplx s, GridFn g) {
    for (auto& z : g.v_) z *= s;
    return g;
  }
  /// Pointwise product.
  friend GridFn pointwise(const GridFn& a, const GridFn& b) {
    a.require_same(b);
    fft::cvec out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a.v_[j] * b.v_[j];
    return GridFn(std::move(out));
  }

  void require_same(const GridFn& o) const {
    if (o.size() != size()) {
      throw Error(ErrorCode::GridMismatch,
                  "grid sizes " + std::to_string(size()) + " and " + std::to_string(o.size()));
    }
  }

  /// Binary layout: uint64 M, uint64 real flag, then M (re, im) float64 pairs,
  /// all little-endian.
  void write_binary(std::ostream& os) const {
    put_u64(os, v_.size());
    put_u64(os, is_real() ? 1 : 0);
    for (const auto& z : v_) {
      put_f64(os, z.real());
      put_f64(os, z.imag());
    }
  }

  static GridFn read_binary(std::istream& is) {
    const std::uint64_t m = get_u64(is);
    (void)get_u64(is);
    if (!fft::is_pow2(m) || m > (std::uint64_t{1} << 30)) throw Error(ErrorCode::ParseError, "bad grid header");
    fft::cvec v(m);
    for (auto& z : v) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      z = {re, im};
    }
    return GridFn(std::move(v));
  }

  json to_json() const {
    json s = json::array();
    const bool real = is_real();
    for (const auto& z : v_) s.push_back(real ? json(z.real()) : json::array({z.real(), z.imag()}));
    return json{{"M", v_.size()}, {"real", real}, {"samples", s}};
  }

 private:
  static void put_u64(std::ostream& os, std::uint64_t x) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
  }
  static void put_f64(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }
  static std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw Error(ErrorCode::ParseError, "truncated grid data");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return x;
  }
  static double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

  fft::cvec v_;
};

/// Samples of f at j/M; requires M a power of two above 2·deg(f).
template <typename C>
GridFn sample(const TrigPoly<C>& f, std::size_t m) {
  if (!fft::is_pow2(m) || static_cast<Int>(m) <= 2 * f.degree()) {
    throw Error(ErrorCode::GridTooSmall,
                "grid " + std::to_string(m) + " for degree " + std::to_string(f.degree()));
  }
  return GridFn(f.samples(m));
}

struct PosNeg {
  GridFn plus;
  GridFn minus;
};

/// g = g⁺ - g⁻ with g⁺ = max(g, 0), g⁻ = max(-g, 0).
inline PosNeg pos_neg_split(const GridFn& g) {
  if (!g.is_real()) throw Error(ErrorCode::NotReal, "positive/negative split of a complex grid function");
  std::vector<double> p(g.size()), n(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double v = g[j].real();
    p[j] = std::max(v, 0.0);
    n[j] = std::max(-v, 0.0);
  }
  return {GridFn::from_real(p), GridFn::from_real(n)};
}

/// (g∗h)(x_j) = (1/M) Σ_k g(x_k) h(x_{j-k}).
inline GridFn circ_convolve(const GridFn& g, const GridFn& h) {
  g.require_same(h);
  fft::cvec a = fft::analyze(g.samples());
  const fft::cvec b = fft::analyze(h.samples());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  return GridFn(fft::synthesize(a));
}

struct SplitT {
  GridFn t1;  ///< max(1̂_A, 0)
  GridFn t2;  ///< min(1̂_A, 0)
  MinCertificate certificate;
  LemmaReport report;
};

namespace detail {

inline MinCertificate require_k(const SymSet& a, double k, double tol) {
  const MinCertificate cert = min_norm(indicator(a.set()), tol);
  if (cert.norm_lower() > k) {
    throw Error(ErrorCode::KTooSmall, "certified norm >= " + std::to_string(cert.norm_lower()) + " > K = " +
                                          std::to_string(k));
  }
  return cert;
}

/// Largest |Z|/W over samples (W = 0 requires Z = 0).
inline double max_ratio(const GridFn& z, const std::vector<double>& w) {
  double r = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double a = std::abs(z[j]);
    if (w[j] > 0.0) {
      r = std::max(r, a / w[j]);
    } else if (a > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return r;
}

/// Radial clip: U = Z·min(1, bound/|Z|), so |U| <= bound and Z - U is what overflows.
inline GridFn clip(const GridFn& z, const std::vector<double>& bound) {
  fft::cvec out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double a = std::abs(z[j]);
    const double b = std::max(bound[j], 0.0);
    out[j] = a <= b ? z[j] : (a > 0.0 ? z[j] * (b / a) : cplx{});
  }
  return GridFn(std::move(out));
}

}  // namespace detail

/// 1̂_A = T1 + T2 at samples, with |T1| <= 1̂_A + K and ‖T2‖_∞ <= K.
inline SplitT t1_t2_split(const SymSet& a, double k, std::size_t m, double tol = 1e-9) {
  SplitT out;
  out.certificate = detail::require_k(a, k, tol);
  const GridFn f = sample(indicator(a.set()), m);
  std::vector<double> t1(m), t2(m), w(m);
  double gap_sum = 0.0;
  double over = 0.0;
  double t2_max = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double v = f[j].real();
    t1[j] = std::max(v, 0.0);
    t2[j] = std::min(v, 0.0);
    gap_sum = std::max(gap_sum, std::abs(t1[j] + t2[j] - v));
    over = std::max(over, t1[j] - (v + k));
    t2_max = std::max(t2_max, -t2[j]);
  }
  out.t1 = GridFn::from_real(t1);
  out.t2 = GridFn::from_real(t2);

  LemmaReport& r = out.report;
  r.lemma_id = "t1_t2_split";
  r.inputs = json{{"A", a.set().vec()}, {"K", k}, {"M", m}};
  r.certificates.push_back(out.certificate);
  r.set_inequality(t2_max, Relation::LessEq, k, 1e-9);
  r.add(SubCheck::make("sum_identity", gap_sum, Relation::LessEq, 0.0, 1e-12));
  r.add(SubCheck::make("t1_below_shifted", over, Relation::LessEq, 0.0, 1e-9));
  return out;
}

struct QDecomposition {
  GridFn q1;
  GridFn q2;
  LemmaReport report;
};

/// Grid large enough for every convolution in the decomposition of (A, t).
inline std::size_t decomposition_grid(const SymSet& a, Int t) {
  const Int span = a.degree() + std::abs(t);
  return fft::next_pow2(static_cast<std::size_t>(std::max<Int>(256, 8 * span)));
}

/// 1̂_{B_t} = Q1 + Q2 at samples with |Q1| <= c1·(1̂_A + K) and ‖Q2‖_∞ <= c2·K³.
///
/// Each of 1̂_{A_t}, 1̂_{A_{-t}}, 1̂_{A∩(A+t)∩(A-t)} and 1̂_B - 1̂_{-B} is written
/// as a convolution of T1 + T2 with modulated copies. The all-T1 term is clipped
/// radially at (1̂_A + K) (twice that for the antisymmetric part); the clipped
/// piece goes to Q1 and everything else to Q2.
inline QDecomposition q1_q2_decompose(const SymSet& a, Int t, double k, std::size_t m,
                                      const Constants& cst = {}, double tol = 1e-9) {
  detail::require_shift(t);
  const Int span = a.degree() + std::abs(t);
  if (!fft::is_pow2(m) || static_cast<Int>(m) < 2 * span + 2) {
    throw Error(ErrorCode::GridTooSmall, "decomposition needs M >= " + std::to_string(2 * span + 2));
  }
  QDecomposition out;
  LemmaReport& r = out.report;
  r.lemma_id = "q1_q2_decompose";
  r.inputs = json{{"A", a.set().vec()}, {"t", t}, {"K", k}, {"M", m}};
  r.constants_used = json{{"c1", cst.c1}, {"c2", cst.c2}};

  const DerivedSets d = derived_sets(a, t);
  const SplitT split = t1_t2_split(a, k, m, tol);
  r.certificates.push_back(split.certificate);
  const GridFn b_samples = sample(indicator(d.b_t), m);

  if (d.b_t.empty()) {
    out.q1 = GridFn::zeros(m);
    out.q2 = GridFn::zeros(m);
    r.mark_vacuous("B_t is empty");
    r.observed_min_constant = 0.0;
    r.extra["observed_c1"] = 0.0;
    r.extra["observed_c2"] = 0.0;
    return out;
  }

  const GridFn f = split.t1 + split.t2;
  const GridFn& t1 = split.t1;
  std::vector<double> w(m), w2(m);
  for (std::size_t j = 0; j < m; ++j) {
    w[j] = std::max(f[j].real() + k, 0.0);
    w2[j] = 2.0 * w[j];
  }

  // A_t and A_{-t}.
  const GridFn full_p = circ_convolve(f, f.modulated(t));
  const GridFn full_m = circ_convolve(f, f.modulated(-t));
  const GridFn u_p = detail::clip(circ_convolve(t1, t1.modulated(t)), w);
  const GridFn u_m = detail::clip(circ_convolve(t1, t1.modulated(-t)), w);
  // A ∩ (A+t) ∩ (A-t).
  const GridFn full_3 = circ_convolve(full_p, f.modulated(-t));
  const GridFn u_3 = detail::clip(circ_convolve(circ_convolve(t1, t1.modulated(t)), t1.modulated(-t)), w);
  // 1̂_B - 1̂_{-B} = 1̂_A ∗ ((e_t - e_{-t})·1̂_A).
  const GridFn full_s = circ_convolve(f, f.modulated(t) - f.modulated(-t));
  const GridFn u_s = detail::clip(circ_convolve(t1, t1.modulated(t) - t1.modulated(-t)), w2);

  const GridFn r1 = u_p + u_m - cplx(2.0) * u_3;
  const GridFn r2 = (full_p - u_p) + (full_m - u_m) - cplx(2.0) * (full_3 - u_3);
  out.q1 = cplx(0.5) * (r1 + u_s);
  out.q2 = cplx(0.5) * (r2 + (full_s - u_s));

  double identity_err = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    identity_err = std::max(identity_err, std::abs(out.q1[j] + out.q2[j] - b_samples[j]));

  const double k3 = k * k * k;
  const double obs_c1 = detail::max_ratio(out.q1, w);
  const double q2_sup = out.q2.max_abs();
  const double obs_c2 = q2_sup / k3;
  r.set_inequality(q2_sup, Relation::LessEq, cst.c2 * k3, 1e-9 * std::max(1.0, k3));
  r.observed_min_constant = obs_c2;
  r.add(SubCheck::make("q1_pointwise_ratio", obs_c1, Relation::LessEq, cst.c1, 1e-9));
  r.add(SubCheck::make("sum_identity", identity_err, Relation::LessEq, 0.0, 1e-8));
  r.extra["observed_c1"] = obs_c1;
  r.extra["observed_c2"] = obs_c2;
  r.extra["q1_l1"] = out.q1.l1();
  return out;
}

}  // namespace chowla
