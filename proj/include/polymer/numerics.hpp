#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace polymer::numerics {

/// Bisection on a bracket with a sign change. Returns std::nullopt when the
/// endpoint values do not bracket a root.
template <class F>
std::optional<double> bisect(F&& fn, double lo, double hi, double x_tol = 1e-14, int max_iter = 400) {
  double f_lo = fn(lo);
  double f_hi = fn(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = fn(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Safeguarded Newton iteration: Newton steps are taken while they stay inside
/// the shrinking bracket and reduce the residual fast enough, otherwise the
/// bracket is bisected.
template <class F, class DF>
std::optional<double> newton_bisect(F&& fn, DF&& dfn, double lo, double hi, double x_tol = 1e-12,
                                    int max_iter = 200) {
  double f_lo = fn(lo);
  const double f_hi = fn(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  const bool rising = f_lo < 0.0;

  double x = 0.5 * (lo + hi);
  double dx_old = hi - lo;
  double dx = dx_old;
  double fx = fn(x);
  double dfx = dfn(x);
  for (int i = 0; i < max_iter; ++i) {
    const bool newton_leaves = ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) > 0.0;
    const bool newton_slow = std::abs(2.0 * fx) > std::abs(dx_old * dfx);
    dx_old = dx;
    if (newton_leaves || newton_slow || dfx == 0.0) {
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx = fx / dfx;
      x -= dx;
    }
    if (std::abs(dx) < x_tol) {
      // One extra Newton-polished evaluation costs little and tightens the
      // residual well below the requested tolerance.
      fx = fn(x);
      dfx = dfn(x);
      if (dfx != 0.0) {
        const double polished = x - fx / dfx;
        if (polished >= lo && polished <= hi) return polished;
      }
      return x;
    }
    fx = fn(x);
    dfx = dfn(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == rising) {
      lo = x;
    } else {
      hi = x;
    }
  }
  return x;
}

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Returns the minimizer.
template <class F>
double golden_section_min(F&& fn, double lo, double hi, double x_tol = 1e-10, int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  for (int i = 0; i < max_iter && b - a > x_tol; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace polymer::numerics
