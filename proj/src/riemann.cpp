#include "polymer/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polymer/error.hpp"
#include "polymer/scalar_bl.hpp"

namespace polymer {

namespace {

constexpr double kEdgeNudge = 1e-9;
constexpr double kSpeedTol = 1e-9;
constexpr double kLevelTol = 1e-9;
constexpr double kSameSolution = 1e-6;
constexpr double kRhTol = 1e-10;

void require_in_square(State u, const char* name) {
  if (!(u.s >= 0.0 && u.s <= 1.0 && u.c >= 0.0 && u.c <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = (" << u.s << ", " << u.c << ") lies outside the unit square";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

State nudge(State u) {
  u.s = std::clamp(u.s, kEdgeNudge, 1.0 - kEdgeNudge);
  return u;
}

bool near(State a, State b, double tol) {
  return std::abs(a.s - b.s) <= tol && std::abs(a.c - b.c) <= tol;
}

void append_group(const SWaveGroup& group, std::vector<Wave>& waves) {
  for (const SSegment& seg : group.segments) {
    Wave w;
    w.kind = seg.kind == SegmentKind::Shock ? WaveKind::SShock : WaveKind::SRarefaction;
    w.left = {seg.s_left, group.c};
    w.right = {seg.s_right, group.c};
    w.speed_lo = seg.speed_left;
    w.speed_hi = seg.speed_right;
    waves.push_back(std::move(w));
  }
}

Region side_of(double gap) {
  if (gap > kSpeedTol) return Region::SFaster;
  if (gap < -kSpeedTol) return Region::CFaster;
  return Region::Coincident;
}

// Configuration of a c-shock from the signs of lambda_s - sigma on each side.
ContactClass shock_class(const FluxModel& model, State ua, State ub, double sigma) {
  ContactClass out;
  out.sigma = sigma;
  out.minus_region = side_of(model.f_s(ua.s, ua.c) - sigma);
  out.plus_region = side_of(model.f_s(ub.s, ub.c) - sigma);
  using R = Region;
  if (out.minus_region == R::Coincident || out.plus_region == R::Coincident) {
    out.config = ContactConfig::Boundary;
  } else if (out.minus_region == R::SFaster && out.plus_region == R::SFaster) {
    out.config = ContactConfig::OneFamily;
  } else if (out.minus_region == R::CFaster && out.plus_region == R::CFaster) {
    out.config = ContactConfig::TwoFamily;
  } else if (out.minus_region == R::SFaster) {
    out.config = ContactConfig::Overcompressive;
  } else {
    out.config = ContactConfig::Crossing;
  }
  out.verdicts.fill(out.config == ContactConfig::Crossing ? Verdict::NotAdmissible
                                                          : Verdict::Admissible);
  return out;
}

double ratio(const FluxModel& model, State u, double q) { return model.f(u.s, u.c) / (u.s + q); }

// U_L -s-> ua -c-> ub -s-> U_R with a c-discontinuity; nullopt when the
// speeds are out of order or the jump is rejected.
std::optional<std::vector<Wave>> build_jump(const FluxModel& model, const Adsorption& ads, State ul,
                                            State ua, State ub, State ur, double q,
                                            std::optional<Criterion> criterion) {
  const double sigma = ratio(model, ua, q);
  if (std::abs(sigma - ratio(model, ub, q)) > kLevelTol) return std::nullopt;
  const SWaveGroup left = envelope_construct(model, ul.c, ul.s, ua.s);
  if (!left.empty() && left.max_speed() > sigma + kSpeedTol) return std::nullopt;
  const SWaveGroup right = envelope_construct(model, ur.c, ub.s, ur.s);
  if (!right.empty() && right.min_speed() < sigma - kSpeedTol) return std::nullopt;

  Wave jump;
  jump.left = ua;
  jump.right = ub;
  jump.speed_lo = jump.speed_hi = sigma;
  if (ads.alpha() == 0.0) {
    jump.kind = WaveKind::Contact;
    ContactClass cls = classify_contact(model, ua, ub);
    if (criterion && !cls.admissible(*criterion)) return std::nullopt;
    jump.contact = cls;
  } else {
    jump.kind = WaveKind::CShock;
    ContactClass cls = shock_class(model, ua, ub, sigma);
    if (cls.config == ContactConfig::Crossing) return std::nullopt;
    // Lax inequalities for the c-family.
    const double lc_a = char_speeds(model, ads, ua).lambda_c;
    const double lc_b = char_speeds(model, ads, ub).lambda_c;
    if (lc_a < sigma - kSpeedTol || lc_b > sigma + kSpeedTol) return std::nullopt;
    jump.contact = cls;
  }

  std::vector<Wave> waves;
  append_group(left, waves);
  waves.push_back(std::move(jump));
  append_group(right, waves);
  return waves;
}

std::optional<std::vector<Wave>> build_fan(const FluxModel& model, const Adsorption& ads, State ul,
                                           State ur, CurveSample curve) {
  const State ua = curve.points.front();
  const State ub = curve.points.back();
  const double lo = curve.values.front();
  const double hi = curve.values.back();
  if (hi < lo - kSpeedTol) return std::nullopt;
  for (std::size_t k = 1; k < curve.values.size(); ++k) {
    curve.values[k] = std::max(curve.values[k], curve.values[k - 1]);
  }
  const SWaveGroup left = envelope_construct(model, ul.c, ul.s, ua.s);
  if (!left.empty() && left.max_speed() > lo + kSpeedTol) return std::nullopt;
  const SWaveGroup right = envelope_construct(model, ur.c, ub.s, ur.s);
  if (!right.empty() && right.min_speed() < hi - kSpeedTol) return std::nullopt;
  (void)ads;

  Wave fan;
  fan.kind = WaveKind::CRarefaction;
  fan.left = ua;
  fan.right = ub;
  fan.speed_lo = lo;
  fan.speed_hi = curve.values.back();
  fan.c_fan = std::make_shared<const CurveSample>(std::move(curve));

  std::vector<Wave> waves;
  append_group(left, waves);
  waves.push_back(std::move(fan));
  append_group(right, waves);
  return waves;
}

CurveSample reversed(CurveSample curve) {
  std::reverse(curve.points.begin(), curve.points.end());
  std::reverse(curve.values.begin(), curve.values.end());
  std::reverse(curve.param.begin(), curve.param.end());
  return curve;
}

std::string structure_of(const std::vector<Wave>& waves) {
  std::string out;
  char last = 0;
  for (const Wave& w : waves) {
    const char tag = (w.kind == WaveKind::SShock || w.kind == WaveKind::SRarefaction) ? 's' : 'c';
    if (tag == 's' && last == 's') continue;
    if (!out.empty()) out += ',';
    out += tag;
    last = tag;
  }
  return out;
}

std::optional<double> interior_minimum_c(const FluxModel& model) {
  const auto& mu = model.mu_coefficients();
  if (!(mu[2] < 0.0)) return std::nullopt;
  const double c = -mu[1] / (2.0 * mu[2]);
  if (c > 0.0 && c < 1.0) return c;
  return std::nullopt;
}

std::vector<double> roots_at(const FluxModel& model, double c, double level, double q) {
  const LineRoots r = line_roots(model, c, level, q);
  std::vector<double> out;
  if (r.lower) out.push_back(*r.lower);
  if (r.upper && (!r.lower || *r.upper != *r.lower)) out.push_back(*r.upper);
  return out;
}

RiemannSolution pick_unique(std::vector<RiemannSolution>& valid, const char* what) {
  if (valid.empty()) {
    throw Error(ErrorKind::NoAdmissibleSolution, std::string("no admissible ") + what);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < valid.size(); ++k) {
    if (l1_distance(valid[0], valid[k], -0.5, 3.5, 2000) > kSameSolution) {
      std::ostringstream msg;
      msg << what << ": candidates '" << valid[0].structure << "' and '" << valid[k].structure
          << "' differ";
      throw Error(ErrorKind::AmbiguousSolution, msg.str());
    }
    if (valid[k].waves().size() < valid[best].waves().size()) best = k;
  }
  return std::move(valid[best]);
}

struct JumpCandidate {
  State a;
  State b;
};

void add_candidate(std::vector<JumpCandidate>& list, State a, State b) {
  for (const JumpCandidate& c : list) {
    // Exact only: at small alpha distinct routes can differ by less than 1e-7.
    if (c.a == a && c.b == b) return;
  }
  list.push_back({a, b});
}

// Intermediate states of the jump: the data states themselves, the sonic
// apex on either side, and branch crossings (saddles) of the level sets.
std::vector<JumpCandidate> jump_candidates(const FluxModel& model, State ul, State ur, double q) {
  std::vector<JumpCandidate> list;
  const double r_left = ratio(model, ul, q);
  const double r_right = ratio(model, ur, q);
  if (std::abs(r_left - r_right) < kLevelTol) add_candidate(list, ul, ur);
  for (double s : roots_at(model, ur.c, r_left, q)) add_candidate(list, ul, {s, ur.c});
  for (double s : roots_at(model, ul.c, r_right, q)) add_candidate(list, {s, ul.c}, ur);

  const State apex_left{tangency_s(model, ul.c, q), ul.c};
  for (double s : roots_at(model, ur.c, ratio(model, apex_left, q), q)) {
    add_candidate(list, apex_left, {s, ur.c});
  }
  const State apex_right{tangency_s(model, ur.c, q), ur.c};
  for (double s : roots_at(model, ul.c, ratio(model, apex_right, q), q)) {
    add_candidate(list, {s, ul.c}, apex_right);
  }
  if (q == 0.0) {
    if (auto cm = interior_minimum_c(model)) {
      if (*cm > std::min(ul.c, ur.c) && *cm < std::max(ul.c, ur.c)) {
        const double level = apex_level(model, *cm);
        for (double sa : roots_at(model, ul.c, level, 0.0)) {
          for (double sb : roots_at(model, ur.c, level, 0.0)) {
            add_candidate(list, {sa, ul.c}, {sb, ur.c});
          }
        }
      }
    }
  }
  return list;
}

}  // namespace

std::string_view to_string(WaveKind kind) noexcept {
  switch (kind) {
    case WaveKind::SShock: return "s_shock";
    case WaveKind::SRarefaction: return "s_rarefaction";
    case WaveKind::CShock: return "c_shock";
    case WaveKind::CRarefaction: return "c_rarefaction";
    case WaveKind::Contact: return "contact";
  }
  return "unknown";
}

std::vector<State> RiemannSolution::constants() const {
  std::vector<State> out{left_};
  for (const Wave& w : waves_) out.push_back(w.right);
  if (waves_.empty()) out.push_back(right_);
  return out;
}

State RiemannSolution::sample(double xi) const {
  for (const Wave& w : waves_) {
    if (xi < w.speed_lo) return w.left;
    if (xi < w.speed_hi) {
      if (w.kind == WaveKind::SRarefaction) {
        return {invert_s_speed(model_, w.left.c, w.left.s, w.right.s, xi), w.left.c};
      }
      if (w.kind == WaveKind::CRarefaction && w.c_fan) {
        const auto& v = w.c_fan->values;
        const auto& p = w.c_fan->points;
        const auto it = std::upper_bound(v.begin(), v.end(), xi);
        if (it == v.begin()) return p.front();
        if (it == v.end()) return p.back();
        const std::size_t k = static_cast<std::size_t>(it - v.begin());
        const double span = v[k] - v[k - 1];
        const double t = span > 0.0 ? (xi - v[k - 1]) / span : 0.0;
        return {p[k - 1].s + t * (p[k].s - p[k - 1].s), p[k - 1].c + t * (p[k].c - p[k - 1].c)};
      }
    }
  }
  return right_;
}

std::vector<State> RiemannSolution::profile(const std::vector<double>& xis) const {
  std::vector<State> out;
  out.reserve(xis.size());
  for (double xi : xis) out.push_back(sample(xi));
  return out;
}

std::vector<double> RiemannSolution::breakpoints() const {
  std::vector<double> out;
  for (const Wave& w : waves_) {
    out.push_back(w.speed_lo);
    if (w.speed_hi != w.speed_lo) out.push_back(w.speed_hi);
  }
  return out;
}

void append_s_group(const FluxModel& model, double c, double s_from, double s_to,
                    std::vector<Wave>& waves) {
  append_group(envelope_construct(model, c, s_from, s_to), waves);
}

RiemannSolution single_contact(const FluxModel& model, State u_minus, State u_plus) {
  RiemannSolution sol(model, Adsorption(0.0), u_minus, u_plus);
  Wave w;
  w.kind = WaveKind::Contact;
  w.left = u_minus;
  w.right = u_plus;
  w.speed_lo = w.speed_hi = model.f(u_minus.s, u_minus.c) / u_minus.s;
  w.contact = classify_contact(model, u_minus, u_plus);
  sol.waves().push_back(std::move(w));
  sol.structure = "c";
  return sol;
}

RiemannSolution solve_m0(const FluxModel& model, State u_left, State u_right, Criterion criterion) {
  require_in_square(u_left, "uL");
  require_in_square(u_right, "uR");
  const State ul = nudge(u_left);
  const State ur = nudge(u_right);
  const Criterion effective =
      criterion == Criterion::VanishingAdsorption ? Criterion::DeSouzaMarchesin : criterion;
  const Adsorption bare(0.0);

  RiemannSolution base(model, bare, ul, ur);
  base.criterion = criterion;
  if (ul == ur) return base;
  if (ul.c == ur.c) {
    append_s_group(model, ul.c, ul.s, ur.s, base.waves());
    base.structure = structure_of(base.waves());
    return base;
  }

  std::vector<RiemannSolution> valid;
  for (const JumpCandidate& cand : jump_candidates(model, ul, ur, 0.0)) {
    if (auto waves = build_jump(model, bare, ul, cand.a, cand.b, ur, 0.0, effective)) {
      RiemannSolution sol = base;
      sol.waves() = std::move(*waves);
      sol.structure = structure_of(sol.waves());
      valid.push_back(std::move(sol));
    }
  }
  return pick_unique(valid, "M0 Riemann solution");
}

RiemannSolution solve_malpha(const FluxModel& model, const Adsorption& ads, State u_left,
                             State u_right) {
  if (!(ads.alpha() > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "solve_malpha needs alpha > 0");
  }
  if (model.family() != FluxFamily::MonotoneCorey) {
    throw Error(ErrorKind::UnsupportedModel, "adsorption Riemann solver covers the monotone family only");
  }
  require_in_square(u_left, "uL");
  require_in_square(u_right, "uR");
  const State ul = nudge(u_left);
  const State ur = nudge(u_right);

  RiemannSolution base(model, ads, ul, ur);
  if (ul == ur) return base;
  if (ul.c == ur.c) {
    append_s_group(model, ul.c, ul.s, ur.s, base.waves());
    base.structure = structure_of(base.waves());
    return base;
  }

  std::vector<RiemannSolution> valid;
  auto accept = [&](std::optional<std::vector<Wave>> waves) {
    if (!waves) return;
    RiemannSolution sol = base;
    sol.waves() = std::move(*waves);
    sol.structure = structure_of(sol.waves());
    valid.push_back(std::move(sol));
  };

  if (ur.c < ul.c) {
    const double q = ads.alpha() * ads.secant(ul.c, ur.c);
    for (const JumpCandidate& cand : jump_candidates(model, ul, ur, q)) {
      accept(build_jump(model, ads, ul, cand.a, cand.b, ur, q, std::nullopt));
    }
  } else {
    // c-rarefaction: it leaves U_L directly, arrives at U_R directly, or
    // leaves the apex of its integral curve at c_R (sonic on the right).
    CurveSample forward = trace_integral_curve(model, ads, ul, ur.c);
    if (forward.reached) accept(build_fan(model, ads, ul, ur, std::move(forward)));
    CurveSample backward = trace_integral_curve(model, ads, ur, ul.c);
    if (backward.reached) accept(build_fan(model, ads, ul, ur, reversed(std::move(backward))));
    const State apex{coincidence_s(model, ads, ur.c), ur.c};
    for (ArchSide side : {ArchSide::Lower, ArchSide::Upper}) {
      CurveSample down = trace_integral_curve(model, ads, apex, ul.c, side);
      if (down.reached) accept(build_fan(model, ads, ul, ur, reversed(std::move(down))));
    }
  }
  return pick_unique(valid, "adsorption Riemann solution");
}

double l1_distance(const RiemannSolution& a, const RiemannSolution& b, double xi_lo, double xi_hi,
                   int samples) {
  if (!(xi_hi > xi_lo)) throw Error(ErrorKind::InvalidArgument, "L1 window must be nonempty");
  std::vector<double> cuts{xi_lo, xi_hi};
  for (const RiemannSolution* sol : {&a, &b}) {
    for (double x : sol->breakpoints()) {
      if (x > xi_lo && x < xi_hi) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto gap = [&](double xi) {
    const State ua = a.sample(xi);
    const State ub = b.sample(xi);
    return std::abs(ua.s - ub.s) + std::abs(ua.c - ub.c);
  };
  const double width = xi_hi - xi_lo;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const int n = std::max(2, static_cast<int>(std::lround(samples * (hi - lo) / width)));
    const double h = (hi - lo) / n;
    // Each piece is smooth; its ends use the one-sided limits.
    double sum = 0.5 * (gap(lo) + gap(std::nextafter(hi, lo)));
    for (int i = 1; i < n; ++i) sum += gap(lo + h * i);
    total += sum * h;
  }
  return total;
}

ValidationReport validate(const RiemannSolution& sol) {
  ValidationReport rep;
  const FluxModel& model = sol.model();
  const double alpha = sol.alpha();
  const Adsorption& ads = sol.adsorption();
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    rep.failures.push_back(what);
  };

  const auto& waves = sol.waves();
  for (std::size_t k = 0; k < waves.size(); ++k) {
    const Wave& w = waves[k];
    const std::string tag = "wave " + std::to_string(k) + " (" + std::string(to_string(w.kind)) + ")";
    const double fl = model.f(w.left.s, w.left.c);
    const double fr = model.f(w.right.s, w.right.c);

    if (w.is_discontinuity()) {
      const double sigma = w.speed_lo;
      double residual = std::abs(sigma * (w.right.s - w.left.s) - (fr - fl));
      if (w.kind != WaveKind::SShock) {
        const double acc_l = w.left.c * w.left.s + alpha * ads.a1(w.left.c);
        const double acc_r = w.right.c * w.right.s + alpha * ads.a1(w.right.c);
        residual = std::max(residual,
                            std::abs(sigma * (acc_r - acc_l) - (w.right.c * fr - w.left.c * fl)));
      } else if (w.left.c != w.right.c) {
        fail(rep.rankine_hugoniot, tag + ": s-shock changes c");
      }
      rep.max_rh_residual = std::max(rep.max_rh_residual, residual);
      if (!(residual < kRhTol) || w.speed_hi != w.speed_lo) {
        fail(rep.rankine_hugoniot, tag + ": Rankine-Hugoniot residual " + std::to_string(residual));
      }
    } else if (w.speed_hi < w.speed_lo) {
      fail(rep.speed_order, tag + ": fan speeds decrease");
    }

    if (w.kind == WaveKind::SShock) {
      bool ok = false;
      try {
        ok = oleinik_check(model, w.left.c, w.left.s, w.right.s, w.speed_lo);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) fail(rep.oleinik, tag + ": Oleinik chord condition fails");
    }
    if (w.kind == WaveKind::SRarefaction) {
      if (std::abs(model.f_s(w.left.s, w.left.c) - w.speed_lo) > kSpeedTol ||
          std::abs(model.f_s(w.right.s, w.right.c) - w.speed_hi) > kSpeedTol ||
          w.left.c != w.right.c) {
        fail(rep.speed_order, tag + ": fan edges do not match characteristic speeds");
      }
    }
    if (w.kind == WaveKind::Contact) {
      if (alpha != 0.0) fail(rep.contacts, tag + ": contact in a model with adsorption");
      if (!w.contact) {
        fail(rep.contacts, tag + ": missing classification");
      } else {
        try {
          const ContactClass again = classify_contact(model, w.left, w.right);
          if (again.config != w.contact->config) {
            fail(rep.contacts, tag + ": classification is inconsistent");
          }
          if (sol.criterion && !again.admissible(*sol.criterion == Criterion::VanishingAdsorption
                                                     ? Criterion::DeSouzaMarchesin
                                                     : *sol.criterion)) {
            fail(rep.contacts, tag + ": contact rejected by the criterion");
          }
        } catch (const Error& e) {
          fail(rep.contacts, tag + ": " + e.what());
        }
      }
    }
    if (w.kind == WaveKind::CShock) {
      if (alpha == 0.0) fail(rep.contacts, tag + ": c-shock without adsorption");
      if (!w.contact || shock_class(model, w.left, w.right, w.speed_lo).config != w.contact->config ||
          w.contact->config == ContactConfig::Crossing) {
        fail(rep.contacts, tag + ": c-shock classification fails");
      }
    }
    if (w.kind == WaveKind::CRarefaction && alpha == 0.0) {
      fail(rep.contacts, tag + ": c-rarefaction without adsorption");
    }

    if (k + 1 < waves.size()) {
      if (waves[k + 1].speed_lo < w.speed_hi - kSpeedTol) {
        fail(rep.speed_order, tag + ": next wave is slower");
      }
      if (!near(w.right, waves[k + 1].left, 1e-12)) {
        fail(rep.end_states, tag + ": right state does not match the next wave");
      }
    }
  }
  if (!waves.empty()) {
    if (!near(waves.front().left, sol.left(), 1e-12)) fail(rep.end_states, "first wave does not start at U_L");
    if (!near(waves.back().right, sol.right(), 1e-12)) fail(rep.end_states, "last wave does not end at U_R");
  } else if (!near(sol.left(), sol.right(), 1e-12)) {
    fail(rep.end_states, "no waves between distinct states");
  }
  return rep;
}

std::pair<RiemannSolution, RiemannSolution> nonuniqueness_pair(const FluxModel& model,
                                                               State u_left, State u_right) {
  const Adsorption bare(0.0);
  if (!(u_left.s > 0.0 && u_right.s > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "states need s > 0");
  }
  if (region(model, bare, u_left) != Region::CFaster ||
      region(model, bare, u_right) != Region::SFaster) {
    throw Error(ErrorKind::PreconditionViolated,
                "need lambda_s < lambda_c at U_L and lambda_s > lambda_c at U_R");
  }
  const double level = model.f(u_left.s, u_left.c) / u_left.s;
  if (std::abs(level - model.f(u_right.s, u_right.c) / u_right.s) >= kLevelTol) {
    throw Error(ErrorKind::PreconditionViolated, "U_L and U_R are not on a common contact level");
  }

  RiemannSolution first = single_contact(model, u_left, u_right);
  const State u2{coincidence_s(model, bare, u_right.c), u_right.c};
  const double level2 = apex_level(model, u_right.c);
  std::vector<double> partners = roots_at(model, u_left.c, level2, 0.0);
  std::reverse(partners.begin(), partners.end());
  for (double s1 : partners) {
    if (auto waves = build_jump(model, bare, u_left, {s1, u_left.c}, u2, u_right, 0.0,
                                Criterion::IsaacsonTemple)) {
      RiemannSolution second(model, bare, u_left, u_right);
      second.waves() = std::move(*waves);
      second.structure = structure_of(second.waves());
      return {std::move(first), std::move(second)};
    }
  }
  throw Error(ErrorKind::PreconditionViolated, "no partner state routes through the coincidence locus");
}

}  // namespace polymer
