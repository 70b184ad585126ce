#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chowla/certify.hpp"
#include "chowla/config.hpp"
#include "chowla/error.hpp"
#include "chowla/fft.hpp"
#include "chowla/report.hpp"
#include "chowla/trigpoly.hpp"

namespace chowla::detail {

/// Writes the headline inequality, flipped when opts.negate is set.
inline void headline(LemmaReport& r, double lhs, Relation rel, double rhs, double tol, const CheckOptions& opts) {
  r.set_inequality(lhs, opts.negate ? flipped(rel) : rel, rhs, tol);
  if (opts.negate) r.extra["negated"] = true;
}

template <typename C>
void require_real_mean_zero(const TrigPoly<C>& f, const char* what) {
  if (!f.is_real()) throw Error(ErrorCode::NotRealValued, std::string(what) + " is not real-valued");
  if (!f.mean_zero()) throw Error(ErrorCode::NotMeanZero, std::string(what) + " has nonzero mean");
}

template <typename C>
MinCertificate certify_norm(const TrigPoly<C>& f, const CheckOptions& opts) {
  return min_norm(f, opts.min_tol);
}

/// Grid of 64·(degree) points (at least 4096), rounded up to a power of two.
inline std::size_t check_grid(Int degree, const CheckOptions& opts) {
  return fft::next_pow2(std::max<std::size_t>(4096, opts.grid_factor * static_cast<std::size_t>(std::max<Int>(degree, 1))));
}

/// Certified lower bound for min_x φ(x) from samples of φ at j/M, given a
/// Lipschitz bound for φ: every x lies within 1/(2M) of a sample.
struct GridMargin {
  double grid_min = 0.0;
  double slack = 0.0;
  double argmin = 0.0;
  double lower() const { return grid_min - slack; }
};

inline GridMargin grid_margin(const std::vector<double>& phi, double lipschitz) {
  GridMargin g;
  const std::size_t m = phi.size();
  auto it = std::min_element(phi.begin(), phi.end());
  g.grid_min = *it;
  g.argmin = static_cast<double>(it - phi.begin()) / static_cast<double>(m);
  g.slack = lipschitz / (2.0 * static_cast<double>(m));
  return g;
}

inline double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace chowla::detail
