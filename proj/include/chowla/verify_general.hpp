#pragma once

// Polynomials F = Σ_j s_j 1̂_{A^{(j)}} with finitely many real coefficient values.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "chowla/setcore.hpp"
#include "chowla/verify_common.hpp"

namespace chowla {

class GeneralCosinePoly {
 public:
  struct Part {
    double s = 1.0;
    SymSet support;
  };

  GeneralCosinePoly() = default;

  /// Supports must be pairwise disjoint and coefficients nonzero.
  explicit GeneralCosinePoly(std::vector<Part> parts) : parts_(std::move(parts)) {
    IntSet all;
    std::size_t total = 0;
    for (const auto& p : parts_) {
      if (p.s == 0.0 || !std::isfinite(p.s)) throw Error(ErrorCode::PreconditionViolated, "coefficient must be nonzero");
      total += p.support.size();
      all = all | p.support.set();
    }
    if (all.size() != total) throw Error(ErrorCode::SupportsNotDisjoint, "supports overlap");
    support_ = all;
  }

  const std::vector<Part>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  const IntSet& support() const noexcept { return support_; }

  ComplexPoly poly() const {
    ComplexPoly f;
    for (const auto& p : parts_) f += cplx(p.s) * indicator<cplx>(p.support.set());
    return f;
  }

  /// s_1 = 1 and |s_j| < 1/1000 for j >= 2.
  bool in_small_regime() const {
    if (parts_.empty() || parts_.front().s != 1.0) return false;
    for (std::size_t j = 1; j < parts_.size(); ++j)
      if (std::abs(parts_[j].s) >= 1e-3) return false;
    return true;
  }

  json to_json() const {
    json j = json::array();
    for (const auto& p : parts_) j.push_back(json{{"s", p.s}, {"A", p.support.set().vec()}});
    return j;
  }

 private:
  std::vector<Part> parts_;
  IntSet support_;
};

struct GeneralFt {
  ComplexPoly f;
  ComplexPoly g;
  DerivedSets sets;  ///< of the first part, residual taken against the full support
  LemmaReport report;
};

namespace detail {

inline cplx main_term(const DerivedSets& d, Int m) {
  if (d.b_t.contains(m)) return {2.0, -1.0};
  if (d.b_t.contains(-m)) return {2.0, 1.0};
  if (d.d_t.contains(m)) return {2.0, 0.0};
  if (d.c_t.contains(m)) return {0.0, -1.0};
  if (d.c_t.contains(-m)) return {0.0, 1.0};
  return {};
}

}  // namespace detail

/// F_t = 2(1 + sin 2πt·)F with λ_m = 2F̂(m) - iF̂(m-t) + iF̂(m+t), and the
/// comparison λ_m = main term + ε_m.
inline GeneralFt build_general_Ft(const GeneralCosinePoly& F, Int t, const CheckOptions& opts = {}) {
  detail::require_shift(t);
  if (F.size() == 0) throw Error(ErrorCode::EmptySet, "no parts");
  GeneralFt out;
  const ComplexPoly base = F.poly();
  out.f = cplx(2.0) * base + cplx(0.0, -1.0) * base.shifted(t) + cplx(0.0, 1.0) * base.shifted(-t);
  out.g = out.f.conj_coeffs();
  out.sets = derived_sets(F.parts().front().support.set(), F.support(), t);

  LemmaReport& r = out.report;
  r.lemma_id = "general_lambda";
  r.inputs = json{{"F", F.to_json()}, {"t", t}};
  r.provenance = "coefficient enumeration";

  double herm = 0.0;
  for (const auto& [m, c] : out.f.coeffs()) herm = std::max(herm, std::abs(c - std::conj(out.f.coeff(-m))));
  r.add(SubCheck::make("hermitian", herm, Relation::LessEq, 0.0, 1e-14));

  IntSet freqs = out.sets.b_t | out.sets.b_t.negated() | out.sets.c_t | out.sets.c_t.negated() | out.sets.d_t;
  std::vector<Int> extra;
  for (const auto& [m, c] : out.f.coeffs()) extra.push_back(m);
  freqs = freqs | IntSet(std::move(extra));
  double eps_max = 0.0;
  json lambdas = json::object();
  for (Int m : freqs) {
    const cplx lam = out.f.coeff(m);
    eps_max = std::max(eps_max, std::abs(lam - detail::main_term(out.sets, m)));
    lambdas[std::to_string(m)] = json::array({lam.real(), lam.imag()});
  }
  r.extra = json{{"lambda", lambdas}, {"max_eps", eps_max}, {"in_regime", F.in_small_regime()}};
  r.tolerance = opts.check_tol;
  if (F.in_small_regime()) {
    detail::headline(r, eps_max, Relation::LessEq, 0.01, 1e-12, opts);
    r.observed_min_constant = eps_max;
  } else {
    r.mark_vacuous("coefficients outside the small-perturbation regime; lambda recorded only");
  }

  const MinCertificate kc = detail::certify_norm(base, opts);
  const MinCertificate cf = detail::certify_norm(out.f, opts);
  const MinCertificate cg = detail::certify_norm(out.g, opts);
  r.certificates = {kc, cf, cg};
  r.add(SubCheck::make("ft_min_norm", std::max(cf.norm_upper(), cg.norm_upper()), Relation::LessEq,
                       4.0 * kc.norm_upper(), opts.check_tol));
  return out;
}

/// With ρ_m + iσ_m = λ_m³: |Σσ_m e(mx)| <= Σρ_m e(mx) + c3·K³, σ_m <= -10 on
/// B_t^{(1)} (σ >= 10 on -B_t^{(1)}) and |ρ_m| <= 9.
inline LemmaReport check_general_cube(const GeneralCosinePoly& F, Int t, const CheckOptions& opts = {}) {
  const GeneralFt ft = build_general_Ft(F, t, opts);
  LemmaReport r;
  r.lemma_id = "general_cube";
  r.inputs = json{{"F", F.to_json()}, {"t", t}};
  r.constants_used = json{{"c3", opts.constants.c3}};
  r.provenance = "coefficient cubes; certified minima";

  const ComplexPoly f3 = conv_pow(ft.f, 3);
  const ComplexPoly g3 = conv_pow(ft.g, 3);
  ComplexPoly::map_type rho, sig;
  for (const auto& [m, c] : f3.coeffs()) {
    rho.emplace(m, c.real());
    sig.emplace(m, c.imag());
  }
  const ComplexPoly rp(rho), sp(sig);

  double anti = 0.0;
  for (const auto& [m, s] : sp.coeffs()) anti = std::max(anti, std::abs(s.real() + sp.coeff(-m).real()));
  r.add(SubCheck::make("sigma_antisymmetric", anti, Relation::LessEq, 0.0, 1e-12));

  const MinCertificate kc = detail::certify_norm(F.poly(), opts);
  const MinCertificate cf = detail::certify_norm(f3, opts);
  const MinCertificate cg = detail::certify_norm(g3, opts);
  r.certificates = {kc, cf, cg};
  const double k = kc.norm_upper();
  const double k3 = k * k * k;
  const double lhs = std::max(cf.norm_upper(), cg.norm_upper());
  detail::headline(r, lhs, Relation::LessEq, opts.constants.c3 * k3, opts.check_tol * std::max(1.0, k3), opts);
  if (k3 > 0.0) r.observed_min_constant = lhs / k3;

  // Grid form: Σρ e(mx) + c3K³ - |i Σσ e(mx)| >= 0.
  const std::size_t m = detail::check_grid(f3.degree(), opts);
  const fft::cvec rs = rp.samples(m);
  const fft::cvec ss = sp.samples(m);
  std::vector<double> phi(m);
  for (std::size_t j = 0; j < m; ++j) phi[j] = rs[j].real() + opts.constants.c3 * k3 - std::abs(ss[j]);
  const detail::GridMargin gm = detail::grid_margin(phi, rp.derivative_bound(1) + sp.derivative_bound(1));
  r.add(SubCheck::make("pointwise_grid", gm.lower(), Relation::GreaterEq, 0.0, opts.check_tol));

  double rho_max = 0.0;
  for (const auto& [mm, c] : rp.coeffs()) rho_max = std::max(rho_max, std::abs(c.real()));
  double sigma_b = ft.sets.b_t.empty() ? -11.0 : -1e300;
  for (Int b : ft.sets.b_t) sigma_b = std::max(sigma_b, sp.coeff(b).real());
  r.extra = json{{"K", k}, {"max_abs_rho", rho_max}, {"max_sigma_on_B", sigma_b}, {"in_regime", F.in_small_regime()}};
  if (F.in_small_regime()) {
    r.add(SubCheck::make("sigma_on_B", sigma_b, Relation::LessEq, -10.0, 0.0));
    r.add(SubCheck::make("rho_bounded", rho_max, Relation::LessEq, 9.0, 0.0));
  }
  return r;
}

/// Solves Σ_ℓ c_ℓ s_j^ℓ = [j = 1] (ℓ = 1..k) and checks Σ_ℓ c_ℓ F^{∗ℓ} = 1̂_{A^{(1)}};
/// also ‖F∗F‖_min <= ‖F‖_min².
inline LemmaReport check_vandermonde_extraction(const GeneralCosinePoly& F, const CheckOptions& opts = {}) {
  const std::size_t k = F.size();
  if (k == 0) throw Error(ErrorCode::EmptySet, "no parts");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (F.parts()[i].s == F.parts()[j].s) throw Error(ErrorCode::SingularSystem, "repeated coefficient value");

  Eigen::MatrixXd v(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = 0; l < k; ++l) v(j, l) = std::pow(F.parts()[j].s, static_cast<double>(l + 1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  rhs(0) = 1.0;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (lu.rank() < static_cast<Eigen::Index>(k)) throw Error(ErrorCode::SingularSystem, "Vandermonde system is singular");
  const Eigen::VectorXd c = lu.solve(rhs);

  LemmaReport r;
  r.lemma_id = "vandermonde_extraction";
  r.inputs = json{{"F", F.to_json()}};
  r.provenance = "LU solve; coefficientwise comparison";

  const ComplexPoly base = F.poly();
  ComplexPoly sum;
  ComplexPoly power = base;
  for (std::size_t l = 0; l < k; ++l) {
    if (l > 0) power = convolve(power, base);
    sum += cplx(c(static_cast<Eigen::Index>(l))) * power;
  }
  const ComplexPoly target = indicator<cplx>(F.parts().front().support.set());
  double err = 0.0;
  for (Int m : F.support()) err = std::max(err, std::abs(sum.coeff(m) - target.coeff(m)));
  for (const auto& [m, z] : sum.coeffs())
    if (!F.support().contains(m)) err = std::max(err, std::abs(z));
  detail::headline(r, err, Relation::LessEq, 0.0, 1e-8, opts);
  r.observed_min_constant = err;

  std::vector<double> cs(c.data(), c.data() + c.size());
  r.extra = json{{"c", cs}, {"residual", (v * c - rhs).norm()}};

  const MinCertificate kf = detail::certify_norm(base, opts);
  const MinCertificate kff = detail::certify_norm(convolve(base, base), opts);
  r.certificates = {kf, kff};
  r.add(SubCheck::make("square_convolution", kff.norm_upper(), Relation::LessEq, kf.norm_upper() * kf.norm_upper(),
                       opts.check_tol));
  return r;
}

}  // namespace chowla
