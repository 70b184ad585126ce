#pragma once

// Additive-combinatorial consequences of a small ‖1̂_A‖_min.

#include <cmath>
#include <cstdlib>
#include <utility>

#include "chowla/setcore.hpp"
#include "chowla/verify_common.hpp"

namespace chowla {

/// argmax over t != 0 of |A ∩ (A+t)|; ties go to the smallest |t|, then t > 0.
/// Returns (0, 0) when no nonzero shift overlaps.
inline std::pair<Int, std::size_t> max_overlap_shift(const IntSet& a) {
  Int best_t = 0;
  std::size_t best = 0;
  for (const auto& [t, c] : shift_overlaps(a)) {
    if (t == 0) continue;
    const bool better = c > best || (c == best && best > 0 &&
                                     (std::abs(t) < std::abs(best_t) || (std::abs(t) == std::abs(best_t) && t > 0)));
    if (better) {
      best = c;
      best_t = t;
    }
  }
  return {best_t, best};
}

/// E(B, A) >= |B|²/(2K) when |B| >= 2K². The unrearranged form
/// E(B, A) >= |B|²/K - K|B| holds for every B and is checked unconditionally.
inline LemmaReport check_roth(const SymSet& a, const IntSet& b, double k, const CheckOptions& opts = {}) {
  if (!b.is_subset_of(a.set())) throw Error(ErrorCode::BNotSubset, "B is not contained in A");
  LemmaReport r;
  r.lemma_id = "roth_energy";
  r.inputs = json{{"A", a.set().vec()}, {"B", b.vec()}, {"K", k}};
  r.provenance = "exact pair count; K checked against a certified minimum";
  const MinCertificate cert = detail::certify_norm(indicator(a.set()), opts);
  r.certificates.push_back(cert);
  if (cert.norm_lower() > k) {
    throw Error(ErrorCode::KTooSmall, "K = " + std::to_string(k) + " below certified norm " +
                                          std::to_string(cert.norm_lower()));
  }
  const double nb = static_cast<double>(b.size());
  const double energy = static_cast<double>(additive_energy(b, a.set()));
  r.tolerance = opts.check_tol * std::max(1.0, nb * nb);
  r.add(SubCheck::make("energy_vs_sharp_form", energy, Relation::GreaterEq, nb * nb / k - k * nb, r.tolerance));
  r.extra = json{{"energy", energy}, {"size_ratio", nb / (2.0 * k * k)}};
  if (nb < 2.0 * k * k) {
    r.mark_vacuous("BTooSmall");
    return r;
  }
  detail::headline(r, energy, Relation::GreaterEq, nb * nb / (2.0 * k), r.tolerance, opts);
  r.observed_min_constant = nb * nb / (energy * k);  // smallest c with E >= |B|²/(cK)
  return r;
}

/// U - V + {0, d} ⊆ A implies ‖1̂_A‖_min >= √min(|U|, |V|) / 2.
inline LemmaReport check_ruzsa_witness(const SymSet& a, const IntSet& u, const IntSet& v, Int d,
                                       const CheckOptions& opts = {}) {
  detail::require_shift(d);
  for (Int x : u)
    for (Int y : v)
      for (Int z : {Int{0}, d})
        if (!a.contains(x - y + z)) {
          throw Error(ErrorCode::WitnessInvalid, std::to_string(x) + " - " + std::to_string(y) + " + " +
                                                     std::to_string(z) + " is not in A");
        }
  LemmaReport r;
  r.lemma_id = "ruzsa_witness";
  r.inputs = json{{"A", a.set().vec()}, {"U", u.vec()}, {"V", v.vec()}, {"d", d}};
  r.provenance = "exact inclusion check; certified minimum";
  r.tolerance = opts.check_tol;
  const std::size_t s = std::min(u.size(), v.size());
  if (s == 0) {
    r.mark_vacuous("empty witness");
    return r;
  }
  const MinCertificate cert = detail::certify_norm(indicator(a.set()), opts);
  r.certificates.push_back(cert);
  const double rhs = 0.5 * std::sqrt(static_cast<double>(s));
  detail::headline(r, cert.norm_lower(), Relation::GreaterEq, rhs, opts.check_tol, opts);
  r.observed_min_constant = cert.norm_lower() / std::sqrt(static_cast<double>(s));
  return r;
}

struct RuzsaWitness {
  IntSet u;
  IntSet v;
  Int d = 0;
};

/// From a progression a, a+d, ..., a+(L-1)d inside A take p = ⌊L/2⌋,
/// U = {a+(p+i)d : 0 <= i < p} and V = {jd : 1 <= j <= p}; then
/// U - V + {0, d} covers indices 0..2p-1 of the progression.
inline RuzsaWitness ap_witness(const SymSet& a) {
  RuzsaWitness w;
  if (a.empty()) return w;
  const LongestAp lap = longest_ap(a.set());
  const std::size_t p = lap.length / 2;
  if (p == 0) return w;
  const Int d = lap.difference;
  const Int start = lap.witness.min();
  std::vector<Int> u, v;
  for (std::size_t i = 0; i < p; ++i) u.push_back(start + static_cast<Int>(p + i) * d);
  for (std::size_t j = 1; j <= p; ++j) v.push_back(static_cast<Int>(j) * d);
  w.u = IntSet(std::move(u));
  w.v = IntSet(std::move(v));
  w.d = d;
  return w;
}

/// Longest progression in A is at most C·‖1̂_A‖_min².
inline LemmaReport check_ap_bound(const SymSet& a, const CheckOptions& opts = {}) {
  LemmaReport r;
  r.lemma_id = "ap_bound";
  r.inputs = json{{"A", a.set().vec()}};
  r.constants_used = json{{"C_ap", opts.constants.C_ap}};
  r.provenance = "exact longest progression; certified minimum";
  r.tolerance = opts.check_tol;
  if (a.empty()) {
    r.mark_vacuous("empty set");
    return r;
  }
  const LongestAp lap = longest_ap(a.set());
  const MinCertificate cert = detail::certify_norm(indicator(a.set()), opts);
  r.certificates.push_back(cert);
  const double k = cert.norm_upper();
  const double len = static_cast<double>(lap.length);
  detail::headline(r, len, Relation::LessEq, opts.constants.C_ap * k * k, opts.check_tol, opts);
  r.observed_min_constant = len / (k * k);
  r.extra = json{{"longest_ap", lap.witness.vec()}, {"difference", lap.difference}, {"K", k}};
  return r;
}

/// ‖1̂_{B_t}‖₁ <= C·‖1̂_A‖₁³, and ‖1̂_B - 1̂_{-B}‖₁, ‖1̂_C - 1̂_{-C}‖₁ <= C'·K².
inline LemmaReport check_l1_bound(const SymSet& a, Int t, const CheckOptions& opts = {}) {
  const DerivedSets d = derived_sets(a, t);
  LemmaReport r;
  r.lemma_id = "l1_bound";
  r.inputs = json{{"A", a.set().vec()}, {"t", t}};
  r.constants_used = json{{"C_l1", opts.constants.C_l1}, {"C_l1p", opts.constants.C_l1p}};
  r.provenance = "L1 norms by quadrature; K by certified minimum";
  const double la = norms(indicator(a.set())).l1;
  const double lb = norms(indicator(d.b_t)).l1;
  const MinCertificate cert = detail::certify_norm(indicator(a.set()), opts);
  r.certificates.push_back(cert);
  const double k = cert.norm_upper();
  const double la3 = la * la * la;
  detail::headline(r, lb, Relation::LessEq, opts.constants.C_l1 * la3, opts.check_tol, opts);
  if (la3 > 0.0) r.observed_min_constant = lb / la3;

  const double lb_anti = norms(indicator(d.b_t) - indicator(d.b_t.negated())).l1;
  const double lc_anti = norms(indicator(d.c_t) - indicator(d.c_t.negated())).l1;
  const double k2 = k * k;
  r.add(SubCheck::make("antisymmetric_B", lb_anti, Relation::LessEq, opts.constants.C_l1p * k2, opts.check_tol));
  r.add(SubCheck::make("antisymmetric_C", lc_anti, Relation::LessEq, opts.constants.C_l1p * k2, opts.check_tol));
  r.extra = json{{"l1_A", la},
                 {"l1_B_t", lb},
                 {"K", k},
                 {"observed_C_l1p_B", detail::safe_ratio(lb_anti, k2)},
                 {"observed_C_l1p_C", detail::safe_ratio(lc_anti, k2)}};
  return r;
}

/// E(A) = Σ_t |A ∩ (A+t)|² >= |A|³/‖1̂_A‖₁², together with the averaging step
/// E - |A|² <= max_{t≠0}|A ∩ (A+t)| · (|A|² - |A|) that yields a large shift.
inline LemmaReport check_holder_energy(const SymSet& a, double l1_bound, const CheckOptions& opts = {}) {
  LemmaReport r;
  r.lemma_id = "holder_energy";
  r.inputs = json{{"A", a.set().vec()}, {"l1_bound", l1_bound}};
  r.provenance = "exact quadruple count; L1 by quadrature";
  r.tolerance = opts.check_tol;
  if (a.empty()) {
    r.mark_vacuous("empty set");
    return r;
  }
  const double l1 = norms(indicator(a.set())).l1;
  if (l1 > l1_bound * (1.0 + 1e-9)) {
    throw Error(ErrorCode::PreconditionViolated,
                "L1 norm " + std::to_string(l1) + " exceeds the supplied bound " + std::to_string(l1_bound));
  }
  const double n = static_cast<double>(a.size());
  const double e = static_cast<double>(quadruple_energy(a.set()));
  const double tol = opts.check_tol * std::max(1.0, e);
  detail::headline(r, e, Relation::GreaterEq, n * n * n / (l1_bound * l1_bound), tol, opts);
  r.observed_min_constant = e * l1_bound * l1_bound / (n * n * n);
  r.add(SubCheck::make("measured_l1_form", e, Relation::GreaterEq, n * n * n / (l1 * l1), tol));

  const auto [t_star, overlap] = max_overlap_shift(a.set());
  const double ov = static_cast<double>(overlap);
  r.add(SubCheck::make("energy_vs_max_overlap", e, Relation::LessEq, std::max(ov, n) * n * n, 0.0));
  r.add(SubCheck::make("energy_vs_max_nonzero_overlap", e - n * n, Relation::LessEq, ov * (n * n - n), 0.0));
  r.extra = json{{"energy", e}, {"l1", l1}, {"t_star", t_star}, {"overlap", overlap}};
  return r;
}

}  // namespace chowla
