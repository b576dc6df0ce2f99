#include "polymer/travwave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polymer/error.hpp"
#include "polymer/ode.hpp"

namespace polymer {

namespace {

constexpr double kEscape = 5.0;

struct Branch {
  double s_end = 0.0;
  bool escaped = false;
  std::vector<State> points;
  std::vector<double> xi;
};

double c_rate(const TWSystem& sys, double c) {
  const Adsorption& a = sys.ads;
  return sys.sigma * a.alpha() / sys.kappa * (a.a1(1.0) * c - a.a1(c));
}

double s_rate(const TWSystem& sys, double s, double c) {
  return sys.model.f(s, c) - sys.sigma * (s + sys.ads.alpha() * sys.ads.a1(1.0));
}

// Follows the unstable manifold of a saddle on c = 1 (c decreasing) or the
// stable manifold of a saddle on c = 0 (c increasing, xi decreasing) up to the
// section c = c_end, using c as the independent variable.
Branch integrate_branch(const TWSystem& sys, const Equilibrium& eq, double c_end, double offset,
                        bool record) {
  const FluxDerivatives d = sys.model.eval(eq.state);
  const double f_c = d.f_c;
  const double g_prime = eq.eig_c;
  const double f_s = eq.eig_s;
  double v0 = f_c;
  double v1 = g_prime - f_s;
  const double norm = std::hypot(v0, v1);
  v0 /= norm;
  v1 /= norm;
  const bool downward = c_end < eq.state.c;
  if ((downward && v1 > 0.0) || (!downward && v1 < 0.0)) {
    v0 = -v0;
    v1 = -v1;
  }
  const double c0 = eq.state.c + offset * v1;
  const double s0 = eq.state.s + offset * v0;

  Branch out;
  if (record) {
    out.points.push_back(eq.state);
    out.xi.push_back(-std::numeric_limits<double>::infinity());
    out.points.push_back({s0, c0});
    out.xi.push_back(0.0);
  }
  auto rhs = [&](double c, const ode::Vec<2>& y) {
    const double g = c_rate(sys, c);
    return ode::Vec<2>{s_rate(sys, y[0], c) / g, 1.0 / g};
  };
  ode::Options opt;
  opt.h_init = 1e-6;
  opt.h_max = 0.01;
  opt.rtol = 1e-11;
  opt.atol = 1e-12;
  auto observer = [&](const ode::Step<2>& step) {
    if (record) {
      out.points.push_back({step.y1[0], step.t1});
      out.xi.push_back(step.y1[1]);
    }
    if (std::abs(step.y1[0]) > kEscape) {
      out.escaped = true;
      return false;
    }
    return true;
  };
  const auto result =
      ode::dopri5<2>(rhs, c0, ode::Vec<2>{s0, 0.0}, c_end, opt, observer, ode::Vec<2>{1.0, 0.0});
  out.s_end = result.y[0];
  if (result.status != ode::Status::ReachedEnd && !out.escaped) {
    // Treat integrator breakdown like an escape in the direction it was heading.
    out.escaped = true;
  }
  if (record && !out.points.empty() && out.xi.front() == -std::numeric_limits<double>::infinity()) {
    out.points.erase(out.points.begin());
    out.xi.erase(out.xi.begin());
  }
  return out;
}

void require_shootable(const FluxModel& model, const Adsorption& ads, double kappa,
                       const ShootOptions& options) {
  if (model.family() != FluxFamily::Boomerang) {
    throw Error(ErrorKind::UnsupportedModel, "traveling-wave shooting needs the boomerang flux");
  }
  if (!(kappa > 0.0)) throw Error(ErrorKind::InvalidArgument, "kappa must be positive");
  if (!(ads.alpha() > 0.0 && ads.alpha() <= options.alpha_bar)) {
    std::ostringstream msg;
    msg << "alpha = " << ads.alpha() << " outside (0, " << options.alpha_bar << "]";
    throw Error(ErrorKind::NoConnection, msg.str());
  }
}

Equilibrium saddle_of(const std::vector<Equilibrium>& eqs) {
  for (const Equilibrium& e : eqs) {
    if (e.type == EquilibriumType::Saddle) return e;
  }
  throw Error(ErrorKind::RootCountMismatch, "no saddle on the edge");
}

}  // namespace

std::string_view to_string(EquilibriumType type) noexcept {
  switch (type) {
    case EquilibriumType::Saddle: return "saddle";
    case EquilibriumType::Repeller: return "repeller";
    case EquilibriumType::Attractor: return "attractor";
    case EquilibriumType::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::array<double, 2> tw_rhs(const TWSystem& sys, State u) {
  return {s_rate(sys, u.s, u.c), c_rate(sys, u.c)};
}

std::vector<Equilibrium> equilibria_at_edge(const TWSystem& sys, double c_edge) {
  if (c_edge != 0.0 && c_edge != 1.0) {
    throw Error(ErrorKind::InvalidArgument, "equilibria live on c = 0 or c = 1");
  }
  const Adsorption& a = sys.ads;
  const double q = a.alpha() * a.a1(1.0);
  const LineRoots roots = line_roots(sys.model, c_edge, sys.sigma, q);
  const bool two = roots.lower && roots.upper && *roots.lower < *roots.upper &&
                   *roots.lower > 0.0 && *roots.upper < 1.0;
  if (!two) {
    std::ostringstream msg;
    msg << "expected two interior rest points on c = " << c_edge << " for sigma = " << sys.sigma;
    throw Error(ErrorKind::RootCountMismatch, msg.str());
  }
  const double eig_c = sys.sigma * a.alpha() / sys.kappa * (a.a1(1.0) - a.a1_prime(c_edge));
  std::vector<Equilibrium> out;
  for (double s : {*roots.lower, *roots.upper}) {
    Equilibrium e;
    e.state = {s, c_edge};
    e.eig_s = sys.model.f_s(s, c_edge) - sys.sigma;
    e.eig_c = eig_c;
    if (e.eig_s > 0.0 && e.eig_c > 0.0) {
      e.type = EquilibriumType::Repeller;
    } else if (e.eig_s < 0.0 && e.eig_c < 0.0) {
      e.type = EquilibriumType::Attractor;
    } else if (e.eig_s * e.eig_c < 0.0) {
      e.type = EquilibriumType::Saddle;
    }
    out.push_back(e);
  }
  return out;
}

double shooting_mismatch(const FluxModel& model, const Adsorption& ads, double kappa, double sigma,
                         const ShootOptions& options) {
  const TWSystem sys{model, ads, kappa, sigma};
  const Equilibrium u_minus = saddle_of(equilibria_at_edge(sys, 1.0));
  const Equilibrium u_plus = saddle_of(equilibria_at_edge(sys, 0.0));
  const Branch unstable = integrate_branch(sys, u_minus, options.match_c, options.seed_offset, false);
  const Branch stable = integrate_branch(sys, u_plus, options.match_c, options.seed_offset, false);
  const double gap = unstable.s_end - stable.s_end;
  return options.flip_mismatch ? -gap : gap;
}

Connection shoot_connection(const FluxModel& model, const Adsorption& ads, double kappa,
                            const ShootOptions& options) {
  require_shootable(model, ads, kappa, options);
  const SigmaBounds bounds = sigma_min_max(model, ads);
  const double eps = 1e-6 * (bounds.sigma_max - bounds.sigma_min);
  double lo = bounds.sigma_min + eps;
  double hi = bounds.sigma_max - eps;
  auto mismatch = [&](double sigma) {
    return shooting_mismatch(model, ads, kappa, sigma, options);
  };
  double m_lo = mismatch(lo);
  const double m_hi = mismatch(hi);
  if ((m_lo > 0.0) == (m_hi > 0.0)) {
    std::ostringstream msg;
    msg << "mismatch keeps its sign on the speed bracket: " << m_lo << " at " << lo << ", " << m_hi
        << " at " << hi;
    throw Error(ErrorKind::NoConnection, msg.str());
  }

  Connection out;
  out.sigma_min = bounds.sigma_min;
  out.sigma_max = bounds.sigma_max;
  double mid = 0.5 * (lo + hi);
  double m_mid = 0.0;
  for (int it = 0; it < options.max_bisections; ++it) {
    mid = 0.5 * (lo + hi);
    m_mid = mismatch(mid);
    out.iterations = it + 1;
    if (std::abs(m_mid) < options.mismatch_tol || !(mid > lo && mid < hi)) break;
    if ((m_mid > 0.0) == (m_lo > 0.0)) {
      lo = mid;
      m_lo = m_mid;
    } else {
      hi = mid;
    }
  }
  out.sigma = mid;
  out.mismatch = m_mid;

  const TWSystem sys{model, ads, kappa, mid};
  const Equilibrium u_minus = saddle_of(equilibria_at_edge(sys, 1.0));
  const Equilibrium u_plus = saddle_of(equilibria_at_edge(sys, 0.0));
  out.u_minus = u_minus.state;
  out.u_plus = u_plus.state;
  const Branch unstable = integrate_branch(sys, u_minus, options.match_c, options.seed_offset, true);
  const Branch stable = integrate_branch(sys, u_plus, options.match_c, options.seed_offset, true);

  out.orbit.kind = CurveKind::IntegralC;
  out.orbit.reached = !unstable.escaped && !stable.escaped;
  for (std::size_t k = 0; k < unstable.points.size(); ++k) {
    out.orbit.points.push_back(unstable.points[k]);
    out.orbit.param.push_back(unstable.xi[k]);
  }
  // The stable branch runs backward in xi; shift it to continue at the section.
  const double xi_join = unstable.xi.back();
  const double xi_shift = stable.xi.back();
  for (std::size_t k = stable.points.size(); k-- > 0;) {
    if (k + 1 == stable.points.size()) continue;
    out.orbit.points.push_back(stable.points[k]);
    out.orbit.param.push_back(xi_join + (stable.xi[k] - xi_shift));
  }
  for (const State& u : out.orbit.points) {
    out.orbit.values.push_back(s_rate(sys, u.s, u.c));
  }
  return out;
}

UndercompressiveData undercompressive_contact(const FluxModel& model) {
  const SaddlePoint a = saddle_point_A(model);
  UndercompressiveData out;
  out.sigma = apex_level(model, a.state.c);
  const LineRoots top = line_roots(model, 1.0, out.sigma, 0.0);
  const LineRoots bottom = line_roots(model, 0.0, out.sigma, 0.0);
  if (!top.upper || !bottom.lower) {
    throw Error(ErrorKind::NoRoot, "saddle level does not reach the edges");
  }
  out.u_minus = {*top.upper, 1.0};
  out.u_plus = {*bottom.lower, 0.0};
  return out;
}

LimitStudy limit_study(const FluxModel& model, const Adsorption& ads_template, double kappa,
                       const std::vector<double>& alpha_seq, const ShootOptions& options) {
  for (std::size_t k = 1; k < alpha_seq.size(); ++k) {
    if (!(alpha_seq[k] < alpha_seq[k - 1])) {
      throw Error(ErrorKind::InvalidArgument, "alpha sequence must be strictly decreasing");
    }
  }
  LimitStudy study;
  study.kappa = kappa;
  study.limit = undercompressive_contact(model);
  for (double alpha : alpha_seq) {
    const Adsorption ads = ads_template.with_alpha(alpha);
    LimitRow row;
    row.alpha = alpha;
    row.connection = shoot_connection(model, ads, kappa, options);
    row.sigma = row.connection.sigma;
    row.u_minus = row.connection.u_minus;
    row.u_plus = row.connection.u_plus;
    row.err_sigma = std::abs(row.sigma - study.limit.sigma);
    row.err_s_minus = std::abs(row.u_minus.s - study.limit.u_minus.s);
    row.err_s_plus = std::abs(row.u_plus.s - study.limit.u_plus.s);
    const double q = alpha * ads.a1(1.0);
    row.rh_residual =
        std::max(std::abs(row.sigma * (row.u_minus.s + q) - model.f(row.u_minus.s, 1.0)),
                 std::abs(row.sigma * (row.u_plus.s + q) - model.f(row.u_plus.s, 0.0)));
    study.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k + 1 < study.rows.size(); ++k) {
    const LimitRow& a = study.rows[k];
    const LimitRow& b = study.rows[k + 1];
    study.sigma_order.push_back(std::log(a.err_sigma / b.err_sigma) / std::log(a.alpha / b.alpha));
  }
  return study;
}

}  // namespace polymer
