#include "polymer/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polymer/error.hpp"
#include "polymer/numerics.hpp"
#include "polymer/ode.hpp"

namespace polymer {

namespace {

constexpr double kContinuationStep = 1.0 / 512.0;

// Unit c-eigenvector without the throwing checks, for use inside the ODE where
// trial stages may poke slightly outside the unit square.
ode::Vec<2> unit_field(const FluxModel& model, const Adsorption& ads, double s, double c) {
  s = std::clamp(s, 1e-12, 1.0);
  c = std::clamp(c, 0.0, 1.0);
  const FluxDerivatives d = model.eval({s, c});
  const double lambda_c = d.f / (s + ads.alpha() * ads.a1_prime(c));
  const double r0 = -d.f_c;
  const double r1 = d.f_s - lambda_c;
  const double norm = std::hypot(r0, r1);
  if (norm == 0.0) return {0.0, 0.0};
  return {r0 / norm, r1 / norm};
}

double lambda_c_at(const FluxModel& model, const Adsorption& ads, State u) {
  return model.f(u.s, u.c) / (u.s + ads.alpha() * ads.a1_prime(u.c));
}

std::vector<double> band_grid(double lo, double hi) {
  std::vector<double> cs;
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / kContinuationStep)));
  for (int k = 0; k <= n; ++k) cs.push_back(lo + (hi - lo) * static_cast<double>(k) / n);
  cs.back() = hi;
  return cs;
}

CurveSample leg_sample(const FluxModel& model, double level, double lo, double hi, ArchSide side) {
  CurveSample out;
  out.kind = CurveKind::ContactLevelSet;
  for (double c : band_grid(lo, hi)) {
    const LineRoots roots = line_roots(model, c, level, 0.0);
    const auto& root = side == ArchSide::Lower ? roots.lower : roots.upper;
    if (!root) continue;
    out.points.push_back({*root, c});
    out.values.push_back(level);
    out.param.push_back(c);
  }
  return out;
}

}  // namespace

HugoniotPoint hugoniot_c_branch(const FluxModel& model, const Adsorption& ads, State u_minus,
                                double c_target, ArchSide side) {
  if (!(u_minus.s > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "hugoniot_c_branch needs s_minus > 0");
  }
  const double q = ads.alpha() * ads.secant(u_minus.c, c_target);
  const double sigma = model.f(u_minus.s, u_minus.c) / (u_minus.s + q);
  const LineRoots roots = line_roots(model, c_target, sigma, q);
  const auto& root = side == ArchSide::Lower ? roots.lower : roots.upper;
  if (!root) {
    throw Error(ErrorKind::NoIntersection,
                "c-Hugoniot arch does not reach c = " + std::to_string(c_target));
  }
  return {{*root, c_target}, sigma};
}

CurveSample trace_integral_curve(const FluxModel& model, const Adsorption& ads, State u0,
                                 double c_target, ArchSide side) {
  CurveSample out;
  out.kind = CurveKind::IntegralC;
  out.points.push_back(u0);
  out.values.push_back(lambda_c_at(model, ads, u0));
  out.param.push_back(u0.c);
  if (c_target == u0.c) {
    out.reached = true;
    return out;
  }
  const double want = c_target > u0.c ? 1.0 : -1.0;
  const ode::Vec<2> r0 = unit_field(model, ads, u0.s, u0.c);
  double dir = 1.0;
  if (std::abs(r0[1]) > 1e-8) {
    dir = r0[1] * want > 0.0 ? 1.0 : -1.0;
  } else {
    // On (or numerically at) the coincidence locus the c-direction vanishes;
    // pick the branch by the direction of s instead.
    const double ds_sign = side == ArchSide::Lower ? -1.0 : 1.0;
    dir = r0[0] * ds_sign >= 0.0 ? 1.0 : -1.0;
  }

  auto rhs = [&](double, const ode::Vec<2>& y) {
    const ode::Vec<2> r = unit_field(model, ads, y[0], y[1]);
    return ode::Vec<2>{dir * r[0], dir * r[1]};
  };

  ode::Options opt;
  opt.h_init = 1e-3;
  opt.h_max = 0.005;
  bool started = false;
  auto observer = [&](const ode::Step<2>& step) {
    const double g0 = step.y0[1] - c_target;
    const double g1 = step.y1[1] - c_target;
    if (g0 * g1 <= 0.0) {
      auto g = [&](double t) { return step.interpolate(t)[1] - c_target; };
      const double t_hit =
          numerics::bisect(g, std::min(step.t0, step.t1), std::max(step.t0, step.t1), 1e-15)
              .value_or(step.t1);
      ode::Vec<2> y = step.interpolate(t_hit);
      State hit{y[0], c_target};
      out.points.push_back(hit);
      out.values.push_back(lambda_c_at(model, ads, hit));
      out.param.push_back(c_target);
      out.reached = true;
      return false;
    }
    const double moved = (step.y1[1] - step.y0[1]) * want;
    const bool outside = step.y1[0] <= 0.0 || step.y1[0] > 1.0 || step.y1[1] < 0.0 || step.y1[1] > 1.0;
    // Allow the first step to start flat when seeded on the coincidence locus.
    if (outside || (moved <= 0.0 && started)) {
      out.stalled = true;
      return false;
    }
    if (moved > 0.0) started = true;
    State u{step.y1[0], step.y1[1]};
    out.points.push_back(u);
    out.values.push_back(lambda_c_at(model, ads, u));
    out.param.push_back(u.c);
    return true;
  };
  const auto result = ode::dopri5<2>(rhs, 0.0, ode::Vec<2>{u0.s, u0.c}, 4.0, opt, observer);
  if (!out.reached && result.status != ode::Status::Stopped) out.stalled = true;
  return out;
}

CurveSample integral_curve(const FluxModel& model, const Adsorption& ads, State u0,
                           double c_target, ArchSide side) {
  CurveSample out = trace_integral_curve(model, ads, u0, c_target, side);
  if (!out.reached) {
    throw Error(ErrorKind::StalledAtApex,
                "integral curve turns before reaching c = " + std::to_string(c_target));
  }
  return out;
}

double apex_level(const FluxModel& model, double c) { return peak_ratio(model, c, 0.0); }

LevelStructure level_bands(const FluxModel& model, double level, double saddle_tol) {
  LevelStructure out;
  out.level = level;
  out.has_upper = level >= 1.0;

  // The peak of f/s moves with c like f_c / s (envelope theorem), so its only
  // interior critical point is where mu'(c) = 0.
  const auto& mu = model.mu_coefficients();
  std::vector<double> breaks{0.0};
  double critical = -1.0;
  bool saddle = false;
  if (mu[2] != 0.0) {
    const double cc = -mu[1] / (2.0 * mu[2]);
    if (cc > 0.0 && cc < 1.0) {
      critical = cc;
      breaks.push_back(cc);
      saddle = mu[2] < 0.0 && std::abs(apex_level(model, cc) - level) <= saddle_tol;
    }
  }
  breaks.push_back(1.0);

  auto gap = [&](double c) {
    const double d = apex_level(model, c) - level;
    return saddle && c == critical ? std::max(d, 0.0) : d;
  };

  std::vector<LevelBand> raw;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    const double ga = gap(a);
    const double gb = gap(b);
    if (ga >= 0.0 && gb >= 0.0) {
      raw.push_back({a, b, false, false});
    } else if (ga >= 0.0 || gb >= 0.0) {
      auto g = [&](double c) { return apex_level(model, c) - level; };
      const double x = numerics::bisect(g, a, b, 1e-15).value_or(ga >= 0.0 ? a : b);
      if (ga >= 0.0) {
        raw.push_back({a, x, false, true});
      } else {
        raw.push_back({x, b, true, false});
      }
    }
  }
  for (const LevelBand& band : raw) {
    if (!out.bands.empty() && out.bands.back().c_hi == band.c_lo && !out.bands.back().hi_apex &&
        !band.lo_apex) {
      out.bands.back().c_hi = band.c_hi;
      out.bands.back().hi_apex = band.hi_apex;
    } else {
      out.bands.push_back(band);
    }
  }
  if (saddle) out.saddles.push_back(critical);
  return out;
}

LevelSetComponent contact_level_set(const FluxModel& model, State u0) {
  if (!(u0.s > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "contact_level_set needs s > 0");
  }
  LevelSetComponent out;
  out.level = model.f(u0.s, u0.c) / u0.s;
  const LevelStructure ls = level_bands(model, out.level);
  const LevelBand* band = nullptr;
  for (const LevelBand& b : ls.bands) {
    if (u0.c >= b.c_lo - 1e-12 && u0.c <= b.c_hi + 1e-12) band = &b;
  }
  if (band == nullptr) return out;

  for (double c : ls.saddles) {
    if (c >= band->c_lo && c <= band->c_hi) out.through_saddle = true;
  }
  const double s_apex = tangency_s(model, u0.c, 0.0);
  const ArchSide own = u0.s <= s_apex ? ArchSide::Lower : ArchSide::Upper;

  const bool arch = ls.has_upper && !out.through_saddle && (band->lo_apex != band->hi_apex);
  if (arch) {
    // Lower leg toward the apex, then the upper leg away from it: s increases
    // throughout, so s parameterizes the whole arch.
    const double apex_c = band->hi_apex ? band->c_hi : band->c_lo;
    const double far_c = band->hi_apex ? band->c_lo : band->c_hi;
    std::vector<double> cs = band_grid(std::min(apex_c, far_c), std::max(apex_c, far_c));
    if (apex_c < far_c) std::reverse(cs.begin(), cs.end());
    CurveSample arc;
    arc.kind = CurveKind::ContactLevelSet;
    auto push = [&](double s, double c) {
      if (!arc.param.empty() && s <= arc.param.back()) return;
      arc.points.push_back({s, c});
      arc.values.push_back(out.level);
      arc.param.push_back(s);
    };
    for (double c : cs) {
      if (auto r = line_roots(model, c, out.level, 0.0).lower) push(*r, c);
    }
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
      if (auto r = line_roots(model, *it, out.level, 0.0).upper) push(*r, *it);
    }
    out.branches.push_back(std::move(arc));
    return out;
  }

  if (out.through_saddle) {
    out.branches.push_back(leg_sample(model, out.level, band->c_lo, band->c_hi, ArchSide::Lower));
    if (ls.has_upper) {
      out.branches.push_back(leg_sample(model, out.level, band->c_lo, band->c_hi, ArchSide::Upper));
    }
  } else {
    out.branches.push_back(leg_sample(model, out.level, band->c_lo, band->c_hi, own));
  }
  return out;
}

SigmaBounds sigma_min_max(const FluxModel& model, const Adsorption& ads) {
  const double q = ads.alpha() * ads.a1(1.0);
  SigmaBounds out;
  auto slope = [&](double c) { return peak_ratio(model, c, q); };
  out.c_at_min = numerics::golden_section_min(slope, 0.0, 1.0, 1e-10);
  out.s_at_min = tangency_s(model, out.c_at_min, q);
  out.sigma_min = model.f(out.s_at_min, out.c_at_min) / (out.s_at_min + q);
  // The tangent slope is monotone in c away from its interior critical point,
  // so an end point can be the minimiser as well.
  for (double c : {0.0, 1.0}) {
    if (slope(c) < out.sigma_min) {
      out.c_at_min = c;
      out.s_at_min = tangency_s(model, c, q);
      out.sigma_min = slope(c);
    }
  }
  out.s_at_max = tangency_s(model, 0.0, q);
  out.sigma_max = model.f(out.s_at_max, 0.0) / (out.s_at_max + q);
  return out;
}

SaddlePoint saddle_point_A(const FluxModel& model) {
  const auto& mu = model.mu_coefficients();
  if (model.family() != FluxFamily::Boomerang || mu[2] == 0.0) {
    throw Error(ErrorKind::UnsupportedModel, "saddle point A exists only for the boomerang flux");
  }
  const double c = -mu[1] / (2.0 * mu[2]);
  const double s = tangency_s(model, c, 0.0);
  const FluxDerivatives d = model.eval({s, c});
  return {{s, c}, -d.f_sc * d.f_sc + d.f_ss * d.f_cc};
}

}  // namespace polymer
