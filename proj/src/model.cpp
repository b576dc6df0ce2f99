#include "polymer/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polymer/error.hpp"
#include "polymer/numerics.hpp"

namespace polymer {

namespace {

constexpr double kEdge = 1e-9;
constexpr double kRootTol = 1e-12;

void require_mu_positive(const std::array<double, 3>& mu) {
  auto eval = [&](double c) { return mu[0] + c * (mu[1] + c * mu[2]); };
  double lowest = std::min(eval(0.0), eval(1.0));
  if (mu[2] != 0.0) {
    const double vertex = -mu[1] / (2.0 * mu[2]);
    if (vertex > 0.0 && vertex < 1.0) lowest = std::min(lowest, eval(vertex));
  }
  if (!(lowest > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "viscosity ratio mu(c) must stay positive on [0,1]");
  }
}

}  // namespace

std::string_view to_string(FluxFamily family) noexcept {
  switch (family) {
    case FluxFamily::MonotoneCorey: return "monotone";
    case FluxFamily::Boomerang: return "boomerang";
  }
  return "unknown";
}

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::SFaster: return "s_faster";
    case Region::CFaster: return "c_faster";
    case Region::Coincident: return "coincident";
  }
  return "unknown";
}

FluxModel::FluxModel(FluxFamily family, std::array<double, 3> mu) : family_(family), mu_(mu) {
  require_mu_positive(mu_);
}

FluxModel FluxModel::monotone_corey(double mu0, double slope) {
  if (!(slope > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "monotone slope must be positive");
  }
  return FluxModel(FluxFamily::MonotoneCorey, {mu0, slope, 0.0});
}

FluxModel FluxModel::boomerang(double mu0, double bulge) {
  if (!(bulge > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "boomerang bulge must be positive");
  }
  return FluxModel(FluxFamily::Boomerang, {mu0, bulge, -bulge});
}

FluxDerivatives FluxModel::eval(State u) const noexcept {
  const double s = u.s;
  const double w = 1.0 - s;
  const double m = mu(u.c);
  const double dm = mu_prime(u.c);
  const double ddm = mu_second();

  const double d = s * s + m * w * w;
  const double d_s = 2.0 * s - 2.0 * m * w;
  const double d_c = dm * w * w;
  const double g = s * w;
  const double d2 = d * d;
  const double d3 = d2 * d;

  FluxDerivatives out;
  out.f = s * s / d;
  out.f_s = 2.0 * m * g / d2;
  out.f_c = -g * g * dm / d2;
  out.f_ss = 2.0 * m * ((1.0 - 2.0 * s) * d - 2.0 * g * d_s) / d3;
  out.f_sc = 2.0 * g * (dm * d - 2.0 * m * d_c) / d3;
  out.f_cc = -g * g * (ddm * d - 2.0 * dm * d_c) / d3;
  return out;
}

double FluxModel::f(double s, double c) const noexcept {
  const double w = 1.0 - s;
  return s * s / (s * s + mu(c) * w * w);
}

double FluxModel::f_s(double s, double c) const noexcept {
  const double w = 1.0 - s;
  const double m = mu(c);
  const double d = s * s + m * w * w;
  return 2.0 * m * s * w / (d * d);
}

double FluxModel::f_ss(double s, double c) const noexcept { return eval({s, c}).f_ss; }

Adsorption::Adsorption(double alpha, double capacity, double affinity)
    : alpha_(alpha), capacity_(capacity), affinity_(affinity) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be a finite value >= 0");
  }
  if (!(capacity > 0.0)) throw Error(ErrorKind::InvalidArgument, "capacity must be positive");
  if (!(affinity > 0.0)) throw Error(ErrorKind::InvalidArgument, "affinity must be positive");
}

double Adsorption::a1(double c) const noexcept { return capacity_ * c / (1.0 + affinity_ * c); }

double Adsorption::a1_prime(double c) const noexcept {
  const double q = 1.0 + affinity_ * c;
  return capacity_ / (q * q);
}

double Adsorption::a1_second(double c) const noexcept {
  const double q = 1.0 + affinity_ * c;
  return -2.0 * capacity_ * affinity_ / (q * q * q);
}

double Adsorption::secant(double c_minus, double c_plus) const noexcept {
  if (c_minus == c_plus) return a1_prime(c_minus);
  // Closed form of (a1(c+) - a1(c-)) / (c+ - c-); avoids cancellation for close c.
  return capacity_ / ((1.0 + affinity_ * c_minus) * (1.0 + affinity_ * c_plus));
}

FluxDerivatives eval_flux(const FluxModel& model, State u) noexcept { return model.eval(u); }

CharSpeeds char_speeds(const FluxModel& model, const Adsorption& ads, State u) {
  const double denom = u.s + ads.alpha() * ads.a1_prime(u.c);
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::DegenerateState, "lambda_c undefined at s = 0 with alpha = 0");
  }
  return {model.f_s(u.s, u.c), model.f(u.s, u.c) / denom};
}

std::array<double, 2> c_eigenvector(const FluxModel& model, const Adsorption& ads, State u) {
  const CharSpeeds sp = char_speeds(model, ads, u);
  return {-model.eval(u).f_c, sp.lambda_s - sp.lambda_c};
}

double lin_degeneracy(const FluxModel& model, const Adsorption& ads, State u) {
  const CharSpeeds sp = char_speeds(model, ads, u);
  if (ads.alpha() == 0.0) return 0.0;
  const double denom = u.s + ads.alpha() * ads.a1_prime(u.c);
  return -ads.alpha() * model.f(u.s, u.c) * ads.a1_second(u.c) * (sp.lambda_s - sp.lambda_c) /
         (denom * denom);
}

double a1_secant(const Adsorption& ads, double c_minus, double c_plus) noexcept {
  return ads.secant(c_minus, c_plus);
}

double tangency_s(const FluxModel& model, double c, double offset) {
  // h(s) = f_s (s + q) - f is positive near 0, equals -1 at s = 1 and has
  // derivative f_ss (s + q), so the S-shape gives a single crossing.
  auto h = [&](double s) { return model.f_s(s, c) * (s + offset) - model.f(s, c); };
  auto dh = [&](double s) { return model.f_ss(s, c) * (s + offset); };
  const auto root = numerics::newton_bisect(h, dh, kEdge, 1.0 - kEdge, kRootTol);
  if (!root) {
    throw Error(ErrorKind::NoRoot, "no tangency on (0,1) at c = " + std::to_string(c));
  }
  return *root;
}

double coincidence_s(const FluxModel& model, const Adsorption& ads, double c) {
  return tangency_s(model, c, ads.alpha() * ads.a1_prime(c));
}

double peak_ratio(const FluxModel& model, double c, double offset) {
  const double st = tangency_s(model, c, offset);
  return model.f(st, c) / (st + offset);
}

LineRoots line_roots(const FluxModel& model, double c, double slope, double offset) {
  LineRoots out;
  out.apex = tangency_s(model, c, offset);
  // Work with the ratio f / (s + q) - slope so that s = 0 is not a spurious
  // root when the line passes through the origin.
  auto r = [&](double s) {
    const double base = s + offset;
    return base > 0.0 ? model.f(s, c) / base - slope : -slope;
  };
  auto dr = [&](double s) {
    const double base = s + offset;
    if (!(base > 0.0)) return 0.0;
    return (model.f_s(s, c) * base - model.f(s, c)) / (base * base);
  };
  const double r_apex = r(out.apex);
  if (std::abs(r_apex) <= 1e-13) {
    out.lower = out.apex;
    out.upper = out.apex;
    return out;
  }
  if (r_apex < 0.0) return out;
  out.lower = numerics::newton_bisect(r, dr, 0.0, out.apex, kRootTol);
  if (slope * (1.0 + offset) >= 1.0) {
    out.upper = numerics::newton_bisect(r, dr, out.apex, 1.0, kRootTol);
  }
  return out;
}

Region region(const FluxModel& model, const Adsorption& ads, State u, double dead_band) {
  const CharSpeeds sp = char_speeds(model, ads, u);
  const double gap = sp.lambda_s - sp.lambda_c;
  if (gap > dead_band) return Region::SFaster;
  if (gap < -dead_band) return Region::CFaster;
  return Region::Coincident;
}

}  // namespace polymer
