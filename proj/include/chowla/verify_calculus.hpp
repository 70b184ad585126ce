#pragma once

// Norm inequalities for real mean-zero trigonometric polynomials:
//   ‖f‖₁ <= 2‖f‖_min
//   ‖f∗g‖_min <= (‖f‖_min‖g‖₁ + ‖f‖₁‖g‖_min)/2
//   ‖f∗g‖_min <= ‖f‖_min‖g‖_min

#include "chowla/verify_common.hpp"

namespace chowla {

template <typename C>
LemmaReport check_min_to_l1(const TrigPoly<C>& f, const CheckOptions& opts = {}) {
  detail::require_real_mean_zero(f, "f");
  LemmaReport r;
  r.lemma_id = "min_to_l1";
  r.inputs = json{{"f", to_json_poly(f.to_complex())}};
  r.provenance = "L1 from the antiderivative between refined roots; min by certified bisection";
  const MinCertificate cert = detail::certify_norm(f, opts);
  r.certificates.push_back(cert);
  const double l1 = norms(f).l1;
  const double k = cert.norm_upper();
  detail::headline(r, l1, Relation::LessEq, 2.0 * k, opts.check_tol, opts);
  if (k > 0.0) r.observed_min_constant = l1 / k;
  return r;
}

template <typename C>
LemmaReport check_conv_min(const TrigPoly<C>& f, const TrigPoly<C>& g, const CheckOptions& opts = {}) {
  detail::require_real_mean_zero(f, "f");
  detail::require_real_mean_zero(g, "g");
  LemmaReport r;
  r.lemma_id = "conv_min";
  r.inputs = json{{"f", to_json_poly(f.to_complex())}, {"g", to_json_poly(g.to_complex())}};
  r.provenance = "certified minima; L1 by quadrature";
  const MinCertificate cf = detail::certify_norm(f, opts);
  const MinCertificate cg = detail::certify_norm(g, opts);
  const MinCertificate cfg = detail::certify_norm(convolve(f, g), opts);
  r.certificates = {cf, cg, cfg};
  const double rhs = 0.5 * (cf.norm_upper() * norms(g).l1 + norms(f).l1 * cg.norm_upper());
  const double lhs = cfg.norm_upper();
  detail::headline(r, lhs, Relation::LessEq, rhs, opts.check_tol, opts);
  if (rhs > 0.0) r.observed_min_constant = lhs / rhs;
  return r;
}

template <typename C>
LemmaReport check_kconv(const TrigPoly<C>& f, const TrigPoly<C>& g, const CheckOptions& opts = {}) {
  detail::require_real_mean_zero(f, "f");
  detail::require_real_mean_zero(g, "g");
  LemmaReport r;
  r.lemma_id = "kconv";
  r.inputs = json{{"f", to_json_poly(f.to_complex())}, {"g", to_json_poly(g.to_complex())}};
  r.provenance = "certified minima";
  const MinCertificate cf = detail::certify_norm(f, opts);
  const MinCertificate cg = detail::certify_norm(g, opts);
  const MinCertificate cfg = detail::certify_norm(convolve(f, g), opts);
  r.certificates = {cf, cg, cfg};
  const double kf = cf.norm_upper();
  const double rhs = kf * cg.norm_upper();
  detail::headline(r, cfg.norm_upper(), Relation::LessEq, rhs, opts.check_tol, opts);
  if (rhs > 0.0) r.observed_min_constant = cfg.norm_upper() / rhs;

  for (unsigned m : {2u, 3u}) {
    const MinCertificate cm = detail::certify_norm(conv_pow(f, m), opts);
    r.certificates.push_back(cm);
    r.add(SubCheck::make("power_" + std::to_string(m), cm.norm_upper(), Relation::LessEq, std::pow(kf, m),
                         opts.check_tol));
  }
  return r;
}

}  // namespace chowla
