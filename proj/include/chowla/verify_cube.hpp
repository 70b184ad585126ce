#pragma once

// The auxiliary pair f_t = 2(1 + sin 2πt·)1̂_A, g_t = 2(1 - sin 2πt·)1̂_A, the
// cube inequality obtained from f_t^{∗3} and g_t^{∗3}, the h∗h argument that
// turns it into a lower bound, and the refined bracket for X.

#include <cmath>
#include <numbers>

#include "chowla/gridfn.hpp"
#include "chowla/setcore.hpp"
#include "chowla/verify_common.hpp"

namespace chowla {

struct FtGt {
  ExactPoly f;
  ExactPoly g;
  DerivedSets sets;
  MinCertificate k_certificate;
  LemmaReport report;
};

namespace detail {

inline ExactPoly f_recipe(const DerivedSets& d) {
  const GaussInt lam(2, -1);
  ExactPoly f = lam * indicator(d.b_t);
  f += lam.conj() * indicator(d.b_t.negated());
  f += GaussInt(2) * indicator(d.d_t);
  f += GaussInt(0, -1) * indicator(d.c_t);
  f += GaussInt(0, 1) * indicator(d.c_t.negated());
  return f;
}

/// f̂_t(m) = 2·1_A(m) - i·1_A(m-t) + i·1_A(m+t).
inline ExactPoly f_direct(const IntSet& a, Int t) {
  const ExactPoly base = indicator(a);
  ExactPoly f = GaussInt(2) * base;
  f += GaussInt(0, -1) * base.shifted(t);
  f += GaussInt(0, 1) * base.shifted(-t);
  return f;
}

}  // namespace detail

inline FtGt build_ft_gt(const SymSet& a, Int t, const CheckOptions& opts = {}) {
  detail::require_shift(t);
  FtGt out;
  out.sets = derived_sets(a, t);
  out.f = detail::f_recipe(out.sets);
  out.g = out.f.conj_coeffs();
  LemmaReport& r = out.report;
  r.lemma_id = "ft_gt";
  r.inputs = json{{"A", a.set().vec()}, {"t", t}};
  r.provenance = "Gaussian-integer coefficients; certified minima";

  r.add(SubCheck::exact("recipe_matches_direct_coefficients", out.f == detail::f_direct(a.set(), t)));
  r.add(SubCheck::exact("g_is_conjugate", out.g == detail::f_direct(a.set(), -t)));

  // Pointwise identity f_t(x) = 2(1 + sin 2πtx)·1̂_A(x) on a grid.
  const std::size_t m = detail::check_grid(a.degree() + std::abs(t), opts);
  const fft::cvec fs = out.f.samples(m);
  const fft::cvec as = indicator(a.set()).samples(m);
  double err = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(m);
    const double s = unit_phase(t, x).imag();
    err = std::max(err, std::abs(fs[j] - 2.0 * (1.0 + s) * as[j]));
  }
  r.add(SubCheck::make("grid_identity", err, Relation::LessEq, 0.0, 1e-9 * std::max(1.0, double(a.size()))));

  out.k_certificate = detail::certify_norm(indicator(a.set()), opts);
  const MinCertificate cf = detail::certify_norm(out.f, opts);
  const MinCertificate cg = detail::certify_norm(out.g, opts);
  r.certificates = {out.k_certificate, cf, cg};
  const double k = out.k_certificate.norm_upper();
  const double lhs = std::max(cf.norm_upper(), cg.norm_upper());
  detail::headline(r, lhs, Relation::LessEq, 4.0 * k, opts.check_tol, opts);
  if (k > 0.0) r.observed_min_constant = lhs / k;
  r.extra = json{{"K", k}, {"B_t", out.sets.b_t.vec()}, {"C_t", out.sets.c_t.vec()}, {"D_t", out.sets.d_t.vec()}};
  return out;
}

/// R = 8·1̂_D + 2(1̂_B + 1̂_{-B}) and q = -i(11(1̂_B - 1̂_{-B}) - (1̂_C - 1̂_{-C})),
/// so that f_t^{∗3} = R + q and g_t^{∗3} = R - q.
struct CubeParts {
  ExactPoly r;
  ExactPoly q;
};

inline CubeParts cube_parts(const DerivedSets& d) {
  CubeParts p;
  p.r = GaussInt(8) * indicator(d.d_t);
  p.r += GaussInt(2) * indicator(d.b_t);
  p.r += GaussInt(2) * indicator(d.b_t.negated());
  p.q = GaussInt(0, -11) * indicator(d.b_t);
  p.q += GaussInt(0, 11) * indicator(d.b_t.negated());
  p.q += GaussInt(0, 1) * indicator(d.c_t);
  p.q += GaussInt(0, -1) * indicator(d.c_t.negated());
  return p;
}

/// |11(1̂_B - 1̂_{-B}) - (1̂_C - 1̂_{-C})| <= 8·1̂_D + 2(1̂_B + 1̂_{-B}) + c3·K³.
inline LemmaReport check_cube_inequality(const SymSet& a, Int t, const CheckOptions& opts = {}) {
  const FtGt fg = build_ft_gt(a, t, opts);
  const DerivedSets& d = fg.sets;
  LemmaReport r;
  r.lemma_id = "cube_inequality";
  r.inputs = json{{"A", a.set().vec()}, {"t", t}};
  r.constants_used = json{{"c3", opts.constants.c3}};
  r.provenance = "exact cubes of Gaussian-integer coefficients; certified minima";
  for (const auto& s : fg.report.subchecks) r.add(s);

  const ExactPoly f3 = conv_pow(fg.f, 3);
  const ExactPoly g3 = conv_pow(fg.g, 3);
  const CubeParts parts = cube_parts(d);
  bool coeffs_ok = true;
  const IntSet nb = d.b_t.negated(), nc = d.c_t.negated();
  for (const auto& [m, c] : f3.coeffs()) {
    GaussInt want(0);
    if (d.b_t.contains(m)) want = GaussInt(2, -11);
    else if (nb.contains(m)) want = GaussInt(2, 11);
    else if (d.d_t.contains(m)) want = GaussInt(8);
    else if (d.c_t.contains(m)) want = GaussInt(0, 1);
    else if (nc.contains(m)) want = GaussInt(0, -1);
    if (!(c == want)) coeffs_ok = false;
  }
  const std::size_t support = d.b_t.size() * 2 + d.c_t.size() * 2 + d.d_t.size();
  r.add(SubCheck::exact("cube_coefficients", coeffs_ok && f3.terms() == support));
  r.add(SubCheck::exact("cube_split_f", f3 == parts.r + parts.q));
  r.add(SubCheck::exact("cube_split_g", g3 == parts.r - parts.q));

  const MinCertificate kc = fg.k_certificate;
  const MinCertificate cf = detail::certify_norm(f3, opts);
  const MinCertificate cg = detail::certify_norm(g3, opts);
  r.certificates = {kc, cf, cg};
  const double k = kc.norm_upper();
  const double k3 = k * k * k;
  const double lhs = std::max(cf.norm_upper(), cg.norm_upper());
  detail::headline(r, lhs, Relation::LessEq, opts.constants.c3 * k3, opts.check_tol * std::max(1.0, k3), opts);
  if (k3 > 0.0) r.observed_min_constant = lhs / k3;
  const double ft_norm = fg.report.lhs;
  r.add(SubCheck::make("cube_of_ft_norm", lhs, Relation::LessEq, ft_norm * ft_norm * ft_norm,
                       opts.check_tol * std::max(1.0, k3)));

  // Dense-grid cross-check of the pointwise form with Lipschitz slack.
  const std::size_t m = detail::check_grid(f3.degree(), opts);
  const fft::cvec rs = parts.r.samples(m);
  const fft::cvec qs = parts.q.samples(m);
  std::vector<double> phi(m);
  for (std::size_t j = 0; j < m; ++j) phi[j] = rs[j].real() + opts.constants.c3 * k3 - std::abs(qs[j].real());
  const detail::GridMargin gm =
      detail::grid_margin(phi, parts.r.derivative_bound(1) + parts.q.derivative_bound(1));
  r.add(SubCheck::make("pointwise_grid", gm.lower(), Relation::GreaterEq, 0.0, opts.check_tol));
  r.extra = json{{"K", k}, {"B_t_size", d.b_t.size()}, {"grid_size", m}, {"grid_margin", gm.grid_min}};
  return r;
}

/// Inputs of the h∗h argument: |P1| <= P2 + L, P̂1(b) >= 1 + c on B, |P̂2| <= 1.
struct HhInstance {
  ComplexPoly p1;
  ComplexPoly p2;
  IntSet b;
  double c = 0.0;
  double l = 0.0;
};

/// P1 = (11(1̂_B - 1̂_{-B}) - (1̂_C - 1̂_{-C}))/8, P2 = 1̂_D + (1̂_B + 1̂_{-B})/4,
/// c = 3/8 and L = c3·K³/8.
inline HhInstance cube_hh_instance(const SymSet& a, Int t, double k, const Constants& cst = {}) {
  const DerivedSets d = derived_sets(a, t);
  HhInstance h;
  const ComplexPoly bb = indicator<cplx>(d.b_t);
  const ComplexPoly nb = indicator<cplx>(d.b_t.negated());
  const ComplexPoly cc = indicator<cplx>(d.c_t);
  const ComplexPoly nc = indicator<cplx>(d.c_t.negated());
  h.p1 = cplx(1.0 / 8.0) * (cplx(11.0) * (bb - nb) - (cc - nc));
  h.p2 = indicator<cplx>(d.d_t) + cplx(0.25) * (bb + nb);
  h.b = d.b_t;
  h.c = 3.0 / 8.0;
  h.l = cst.c3 * k * k * k / 8.0;
  return h;
}

namespace detail {

struct PointwiseBound {
  double grid_min = 0.0;
  double slack = 0.0;
  double argmin = 0.0;
  std::size_t grid = 0;
  double lower() const { return grid_min - slack; }
};

/// Certified lower bound for min_x (P2(x) + L - |P1(x)|).
inline PointwiseBound pointwise_bound(const ComplexPoly& p1, const ComplexPoly& p2, double l,
                                      const CheckOptions& opts) {
  PointwiseBound pb;
  pb.grid = check_grid(std::max(p1.degree(), p2.degree()), opts);
  const fft::cvec s1 = p1.samples(pb.grid);
  const fft::cvec s2 = p2.samples(pb.grid);
  std::vector<double> phi(pb.grid);
  for (std::size_t j = 0; j < pb.grid; ++j) phi[j] = s2[j].real() + l - std::abs(s1[j]);
  const GridMargin gm = grid_margin(phi, p1.derivative_bound(1) + p2.derivative_bound(1));
  pb.grid_min = gm.grid_min;
  pb.slack = gm.slack;
  pb.argmin = gm.argmin;
  return pb;
}

}  // namespace detail

/// Smallest L (up to the grid slack) for which |P1| <= P2 + L is certified.
inline double certified_l(const ComplexPoly& p1, const ComplexPoly& p2, const CheckOptions& opts = {}) {
  const detail::PointwiseBound pb = detail::pointwise_bound(p1, p2, 0.0, opts);
  return std::max(0.0, pb.slack - pb.grid_min);
}

/// h∗h argument: under the hypotheses, L >= c|B|/‖1̂_B‖₁².
inline LemmaReport check_hh_trick(const ComplexPoly& p1, const ComplexPoly& p2, const IntSet& b, double c, double l,
                                  const CheckOptions& opts = {}) {
  LemmaReport r;
  r.lemma_id = "hh_trick";
  r.inputs = json{{"P1", to_json_poly(p1)}, {"P2", to_json_poly(p2)}, {"B", b.vec()}, {"c", c}, {"L", l}};
  r.provenance = "hypotheses on a Lipschitz-certified grid; L1 and h∗h by quadrature";
  r.tolerance = opts.check_tol;
  if (b.empty()) {
    r.mark_vacuous("B is empty");
    return r;
  }

  constexpr double eps = 1e-12;
  for (Int x : b) {
    const cplx v = p1.coeff(x);
    if (std::abs(v.imag()) > eps || v.real() < 1.0 + c - eps) {
      throw Error(ErrorCode::HypothesisFailed, "P1 coefficient at " + std::to_string(x) + " is below 1 + c");
    }
  }
  for (const auto& [m, v] : p2.coeffs()) {
    if (std::abs(v) > 1.0 + eps) {
      throw Error(ErrorCode::HypothesisFailed, "|P2 coefficient| > 1 at " + std::to_string(m));
    }
  }
  if (!p2.is_real()) throw Error(ErrorCode::HypothesisFailed, "P2 is not real-valued");
  const detail::PointwiseBound pb = detail::pointwise_bound(p1, p2, l, opts);
  if (pb.lower() < -opts.check_tol) {
    throw Error(ErrorCode::HypothesisFailed,
                "|P1| <= P2 + L not certified near x = " + std::to_string(pb.argmin) + " (margin " +
                    std::to_string(pb.lower()) + ")");
  }

  // Quantities of the chain on a common grid.
  const Int deg = std::max({p1.degree(), p2.degree(), b.degree()});
  const std::size_t m = fft::next_pow2(std::max<std::size_t>(std::size_t{1} << 14, 256 * static_cast<std::size_t>(deg)));
  const GridFn hb = sample(indicator<cplx>(b), m);
  const GridFn h = hb.abs();
  const GridFn hh = circ_convolve(h, h);
  const fft::cvec p2s = p2.samples(m);
  double t1 = 0.0, lin = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    t1 += p2s[j].real() * hh[j].real();
    lin += (p2s[j].real() + l) * h[j].real();
  }
  t1 /= static_cast<double>(m);
  lin /= static_cast<double>(m);
  const double l1 = norms(indicator(b)).l1;
  const double nb = static_cast<double>(b.size());

  double coeff_sum = 0.0;
  for (Int x : b) coeff_sum += p1.coeff(x).real();
  const double chain_tol = opts.check_tol * std::max(1.0, nb);
  r.add(SubCheck::make("coefficient_sum", coeff_sum, Relation::GreaterEq, (1.0 + c) * nb, chain_tol));
  r.add(SubCheck::make("against_abs_indicator", lin, Relation::GreaterEq, (1.0 + c) * nb, chain_tol));
  r.add(SubCheck::make("against_hh", t1 + l * l1 * l1, Relation::GreaterEq, (1.0 + c) * nb, chain_tol));
  r.add(SubCheck::make("p2_term_at_most_B", t1, Relation::LessEq, nb, chain_tol));

  const double rhs = c * nb / (l1 * l1);
  detail::headline(r, l, Relation::GreaterEq, rhs, opts.check_tol, opts);
  r.observed_min_constant = l * l1 * l1 / nb;  // largest c the conclusion allows
  r.extra = json{{"l1_B", l1}, {"pointwise_margin", pb.lower()}, {"hypothesis_grid", pb.grid}, {"chain_grid", m}};
  return r;
}

/// Bracket for X = ∫(8·1̂_D + 2(1̂_B + 1̂_{-B}) + c3K³)(H1∗H1), H1 = |Q1|:
///   11|B| - C_b·K⁶ <= X <= 8|B| + C_a(K³√|B| + K⁶).
inline LemmaReport check_x_bounds(const SymSet& a, Int t, const CheckOptions& opts = {}) {
  detail::require_shift(t);
  const Constants& cst = opts.constants;
  LemmaReport r;
  r.lemma_id = "x_bounds";
  r.inputs = json{{"A", a.set().vec()}, {"t", t}};
  r.constants_used = json{{"c1", cst.c1}, {"c2", cst.c2}, {"c3", cst.c3}, {"C_a", cst.C_a}, {"C_b", cst.C_b}};
  r.provenance = "Q1/Q2 decomposition on a grid; X by discrete convolution";
  r.tolerance = opts.check_tol;
  const DerivedSets d = derived_sets(a, t);
  if (d.b_t.empty()) {
    r.mark_vacuous("B_t is empty");
    return r;
  }
  const MinCertificate kc = detail::certify_norm(indicator(a.set()), opts);
  r.certificates.push_back(kc);
  const double k = kc.norm_upper();
  const std::size_t m = decomposition_grid(a, t);
  QDecomposition q;
  try {
    q = q1_q2_decompose(a, t, k, m, cst, opts.min_tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::DecompositionUnavailable, e.what());
  }
  const GridFn h1 = q.q1.abs();
  const GridFn hh = circ_convolve(h1, h1);
  ExactPoly w = GaussInt(8) * indicator(d.d_t);
  w += GaussInt(2) * indicator(d.b_t);
  w += GaussInt(2) * indicator(d.b_t.negated());
  const fft::cvec ws = w.samples(m);
  const double k3 = k * k * k;
  const double k6 = k3 * k3;
  double x = 0.0;
  for (std::size_t j = 0; j < m; ++j) x += (ws[j].real() + cst.c3 * k3) * hh[j].real();
  x /= static_cast<double>(m);

  const double nb = static_cast<double>(d.b_t.size());
  const double sb = std::sqrt(nb);
  const double tol = opts.check_tol * std::max(1.0, x);
  detail::headline(r, x, Relation::LessEq, 8.0 * nb + cst.C_a * (k3 * sb + k6), tol, opts);
  const double lower_rhs = 11.0 * nb - cst.C_b * k6;
  r.add(SubCheck::make("lower_bracket", x, Relation::GreaterEq, lower_rhs, tol));
  for (const auto& s : q.report.subchecks) r.add(s);
  r.add(SubCheck::make("q2_sup", q.report.lhs, Relation::LessEq, q.report.rhs, q.report.tolerance));

  const double ca_min = std::max(0.0, (x - 8.0 * nb) / (k3 * sb + k6));
  const double cb_min = std::max(0.0, (11.0 * nb - x) / k6);
  r.observed_min_constant = ca_min;
  // Both brackets together force 3|B| - C_a K³√|B| - (C_a + C_b)K⁶ <= 0.
  const double root = (cst.C_a + std::sqrt(cst.C_a * cst.C_a + 12.0 * (cst.C_a + cst.C_b))) / 6.0;
  r.extra = json{{"X", x},
                 {"K", k},
                 {"B_t_size", d.b_t.size()},
                 {"grid_size", m},
                 {"observed_C_a", ca_min},
                 {"observed_C_b", cb_min},
                 {"observed_c1", q.report.extra["observed_c1"]},
                 {"observed_c2", q.report.extra["observed_c2"]},
                 {"lower_bracket_vacuous", lower_rhs <= 0.0},
                 {"implied_B_t_bound", root * root * k6},
                 {"implied_constant", root * root}};
  return r;
}

}  // namespace chowla
