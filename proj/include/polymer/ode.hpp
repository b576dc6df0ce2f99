#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace polymer::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  double h_init = 1e-4;
  double h_max = 0.5;
  double h_min = 1e-16;
  long max_steps = 2'000'000;
};

enum class Status { ReachedEnd, Stopped, StepUnderflow, TooManySteps, NonFinite };

template <std::size_t N>
struct Result {
  Status status = Status::ReachedEnd;
  double t = 0.0;
  Vec<N> y{};
  long steps = 0;
};

/// One accepted Dormand-Prince step with its continuous extension, handed to
/// observers so they can locate events inside the step.
template <std::size_t N>
struct Step {
  double t0 = 0.0;
  double t1 = 0.0;
  Vec<N> y0{};
  Vec<N> y1{};
  std::array<Vec<N>, 5> rcont{};

  Vec<N> interpolate(double t) const {
    const double theta = (t - t0) / (t1 - t0);
    const double theta1 = 1.0 - theta;
    Vec<N> out{};
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = rcont[0][i] +
               theta * (rcont[1][i] +
                        theta1 * (rcont[2][i] + theta * (rcont[3][i] + theta1 * rcont[4][i])));
    }
    return out;
  }
};

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(t, y) from t0 to
/// t_end (either direction). `observer(step)` runs after every accepted step
/// and may return false to stop early. `weights` scales each component's
/// contribution to the error norm; a zero weight excludes a component.
template <std::size_t N, class Rhs, class Observer>
Result<N> dopri5(Rhs&& rhs, double t0, Vec<N> y0, double t_end, const Options& opt,
                 Observer&& observer, const Vec<N>& weights) {
  constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                   a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                   a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                   a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                   e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  Result<N> result;
  result.t = t0;
  result.y = y0;
  const double span = t_end - t0;
  if (span == 0.0) return result;
  const double dir = span > 0.0 ? 1.0 : -1.0;

  double t = t0;
  Vec<N> y = y0;
  Vec<N> k1 = rhs(t, y);
  double h = std::min(std::abs(opt.h_init), std::abs(span));
  Vec<N> k2, k3, k4, k5, k6, k7, tmp, y_new;

  auto stage = [&](double tt, const auto& combine) {
    for (std::size_t i = 0; i < N; ++i) tmp[i] = combine(i);
    return rhs(tt, tmp);
  };

  while (true) {
    if (result.steps >= opt.max_steps) {
      result.status = Status::TooManySteps;
      break;
    }
    if (h < opt.h_min) {
      result.status = Status::StepUnderflow;
      break;
    }
    bool last = false;
    if (h >= std::abs(t_end - t)) {
      h = std::abs(t_end - t);
      last = true;
    }
    const double hs = dir * h;
    k2 = stage(t + c2 * hs, [&](std::size_t i) { return y[i] + hs * a21 * k1[i]; });
    k3 = stage(t + c3 * hs, [&](std::size_t i) { return y[i] + hs * (a31 * k1[i] + a32 * k2[i]); });
    k4 = stage(t + c4 * hs, [&](std::size_t i) {
      return y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    });
    k5 = stage(t + c5 * hs, [&](std::size_t i) {
      return y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    });
    k6 = stage(t + hs, [&](std::size_t i) {
      return y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    });
    for (std::size_t i = 0; i < N; ++i) {
      y_new[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    }
    k7 = rhs(t + hs, y_new);

    double err = 0.0;
    double weight_sum = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double e =
          hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double r = e / scale;
      err += weights[i] * r * r;
      weight_sum += weights[i];
      if (!std::isfinite(y_new[i])) finite = false;
    }
    err = std::sqrt(err / std::max(weight_sum, 1e-300));
    if (!finite || !std::isfinite(err)) {
      if (h <= opt.h_min * 4.0) {
        result.status = Status::NonFinite;
        break;
      }
      h *= 0.25;
      continue;
    }

    if (err <= 1.0) {
      Step<N> step;
      step.t0 = t;
      step.t1 = last ? t_end : t + hs;
      step.y0 = y;
      step.y1 = y_new;
      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = hs * k1[i] - ydiff;
        step.rcont[0][i] = y[i];
        step.rcont[1][i] = ydiff;
        step.rcont[2][i] = bspl;
        step.rcont[3][i] = ydiff - hs * k7[i] - bspl;
        step.rcont[4][i] =
            hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      t = step.t1;
      y = y_new;
      k1 = k7;
      ++result.steps;
      result.t = t;
      result.y = y;
      if (!observer(step)) {
        result.status = Status::Stopped;
        break;
      }
      if (last) {
        result.status = Status::ReachedEnd;
        break;
      }
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * fac, opt.h_max);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return result;
}

template <std::size_t N, class Rhs, class Observer>
Result<N> dopri5(Rhs&& rhs, double t0, Vec<N> y0, double t_end, const Options& opt,
                 Observer&& observer) {
  Vec<N> weights;
  weights.fill(1.0);
  return dopri5<N>(std::forward<Rhs>(rhs), t0, y0, t_end, opt, std::forward<Observer>(observer),
                   weights);
}

}  // namespace polymer::ode
