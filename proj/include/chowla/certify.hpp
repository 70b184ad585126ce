#pragma once

// Certified global minimization of real trigonometric polynomials.
//
// A uniform grid of M = max(4096, grid_factor·N) points (rounded up to a power
// of two) is evaluated by FFT. Every grid cell [a, b] of width h gets a lower
// bound from two sound estimates, using L1 = Σ 2π|m||c_m| ≥ |f'| and
// L2 = Σ (2πm)²|c_m| ≥ |f''|:
//   (f(a) + f(b))/2 - L1·h/2                              (Lipschitz)
//   min over s of  interp(s) - L2·s(h - s)/2                (curvature)
// Cells whose bound is within tol of the best value seen are bisected
// (lowest bound first) until every bound clears upper - tol or the evaluation
// budget is exhausted. The best point is polished by ternary search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "chowla/error.hpp"
#include "chowla/report.hpp"
#include "chowla/trigpoly.hpp"

namespace chowla {

struct MinOptions {
  double tol = 1e-9;
  std::size_t grid_factor = 64;
  std::size_t min_grid = 4096;
  std::uint64_t max_evaluations = std::uint64_t{1} << 26;
};

namespace detail {

struct Cell {
  double a;
  double h;
  double fa;
  double fb;
  double bound;
  bool operator>(const Cell& o) const { return bound > o.bound; }
};

inline double cell_bound(double fa, double fb, double h, double l1, double l2, double eval_err) {
  const double lipschitz = 0.5 * (fa + fb) - 0.5 * l1 * h;
  double curvature = std::min(fa, fb);
  if (l2 > 0.0) {
    const double slope = (fb - fa) / h;
    double s = 0.5 * h - slope / l2;
    s = std::clamp(s, 0.0, h);
    curvature = fa + slope * s - 0.5 * l2 * s * (h - s);
  }
  return std::max(lipschitz, curvature) - eval_err;
}

inline double wrap01(double x) {
  x -= std::floor(x);
  return x >= 1.0 ? 0.0 : x;
}

}  // namespace detail

/// Certificate for min_x f(x); always returns, with converged = false when the
/// evaluation budget runs out before radius <= tol.
template <typename C>
MinCertificate certify_minimum(const TrigPoly<C>& f, const MinOptions& opt = {}) {
  if (!f.is_real()) throw Error(ErrorCode::NotRealValued, "minimum requested for a non-Hermitian polynomial");
  MinCertificate cert;
  cert.mean_zero = f.mean_zero();
  if (f.is_zero()) return cert;

  const ComplexPoly g = f.to_complex();
  const Int degree = std::max<Int>(g.degree(), 1);
  const std::size_t grid =
      fft::next_pow2(std::max<std::size_t>(opt.min_grid, opt.grid_factor * static_cast<std::size_t>(degree)));
  cert.grid_size = grid;

  const double l1 = g.derivative_bound(1);
  const double l2 = g.derivative_bound(2);
  const double eval_err =
      16.0 * std::numeric_limits<double>::epsilon() * g.abs_sum() * (std::log2(static_cast<double>(grid)) + 8.0);

  const fft::cvec vals = g.samples(grid);
  const double h0 = 1.0 / static_cast<double>(grid);
  std::vector<double> fv(grid);
  for (std::size_t j = 0; j < grid; ++j) fv[j] = vals[j].real();

  double upper = std::numeric_limits<double>::infinity();
  double argmin = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    if (fv[j] < upper) {
      upper = fv[j];
      argmin = static_cast<double>(j) * h0;
    }
  }
  // Re-evaluate directly so the reported value matches point evaluation.
  upper = g.eval(argmin).real();

  std::uint64_t evals = 0;
  auto eval_at = [&](double x) {
    ++evals;
    return g.eval(detail::wrap01(x)).real();
  };

  auto polish = [&](double center, double width) {
    double lo = center - width;
    double hi = center + width;
    for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (eval_at(m1) < eval_at(m2)) hi = m2; else lo = m1;
    }
    const double x = detail::wrap01(0.5 * (lo + hi));
    const double v = eval_at(x);
    if (v < upper) {
      upper = v;
      argmin = x;
    }
  };
  polish(argmin, h0);

  std::priority_queue<detail::Cell, std::vector<detail::Cell>, std::greater<>> active;
  double settled = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid; ++j) {
    const double fa = fv[j];
    const double fb = fv[(j + 1) % grid];
    const double b = detail::cell_bound(fa, fb, h0, l1, l2, eval_err);
    if (b >= upper - opt.tol) {
      settled = std::min(settled, b);
    } else {
      active.push({static_cast<double>(j) * h0, h0, fa, fb, b});
    }
  }

  bool exhausted = false;
  while (!active.empty()) {
    detail::Cell c = active.top();
    if (c.bound >= upper - opt.tol) break;  // everything left already clears the target
    if (evals >= opt.max_evaluations || c.h < 1e-15) {
      exhausted = true;
      break;
    }
    active.pop();
    const double half = 0.5 * c.h;
    const double xm = c.a + half;
    const double fm = eval_at(xm);
    if (fm < upper) {
      upper = fm;
      argmin = detail::wrap01(xm);
      polish(xm, half);
    }
    for (const auto& child : {detail::Cell{c.a, half, c.fa, fm, 0.0}, detail::Cell{xm, half, fm, c.fb, 0.0}}) {
      detail::Cell k = child;
      k.bound = detail::cell_bound(k.fa, k.fb, k.h, l1, l2, eval_err);
      if (k.bound >= upper - opt.tol) {
        settled = std::min(settled, k.bound);
      } else {
        active.push(k);
      }
    }
  }
  double lower = std::min(settled, upper - eval_err);
  while (!active.empty()) {
    lower = std::min(lower, active.top().bound);
    active.pop();
  }
  cert.lower = lower;
  cert.argmin = argmin;
  cert.radius = upper - lower;
  cert.evaluations = evals;
  cert.converged = !exhausted && cert.radius <= opt.tol;
  return cert;
}

/// Certified ‖f‖_min bracket: -min f ∈ [norm_lower(), norm_upper()], width <= tol.
/// For f with nonzero mean the plain global minimum is certified and the
/// certificate's mean_zero flag is cleared.
template <typename C>
MinCertificate min_norm(const TrigPoly<C>& f, double tol = 1e-9) {
  MinOptions opt;
  opt.tol = tol;
  MinCertificate cert = certify_minimum(f, opt);
  if (!cert.converged) {
    throw Error(ErrorCode::NonConvergence, "best radius " + std::to_string(cert.radius) + " exceeds tol " +
                                               std::to_string(tol));
  }
  return cert;
}

}  // namespace chowla
