#include "polymer/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polymer/curves.hpp"
#include "polymer/error.hpp"
#include "polymer/riemann.hpp"

namespace polymer {

namespace {

constexpr double kLevelTol = 1e-9;
constexpr double kBandTol = 1e-12;

double level_of(const FluxModel& model, State u) {
  if (!(u.s > 0.0)) {
    throw Error(ErrorKind::NotAContact, "contact states need s > 0");
  }
  return model.f(u.s, u.c) / u.s;
}

void require_same_level(const FluxModel& model, State u_minus, State u_plus) {
  const double gap = std::abs(level_of(model, u_minus) - level_of(model, u_plus));
  if (gap >= kLevelTol) {
    throw Error(ErrorKind::NotAContact,
                "states are not on a common level of f/s (gap " + std::to_string(gap) + ")");
  }
}

// -1 below the apex, +1 above it, 0 on the coincidence locus.
int branch_of(const FluxModel& model, State u) {
  switch (region(model, Adsorption(0.0), u)) {
    case Region::SFaster: return -1;
    case Region::CFaster: return 1;
    case Region::Coincident: return 0;
  }
  return 0;
}

}  // namespace

std::string_view to_string(ContactConfig config) noexcept {
  switch (config) {
    case ContactConfig::OneFamily: return "one_family";
    case ContactConfig::TwoFamily: return "two_family";
    case ContactConfig::Overcompressive: return "overcompressive";
    case ContactConfig::Crossing: return "crossing";
    case ContactConfig::Boundary: return "boundary";
  }
  return "unknown";
}

std::string_view to_string(Criterion criterion) noexcept {
  switch (criterion) {
    case Criterion::KeyfitzKranzer: return "kk";
    case Criterion::IsaacsonTemple: return "it";
    case Criterion::DeSouzaMarchesin: return "dsm";
    case Criterion::VanishingAdsorption: return "va";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Admissible: return "admissible";
    case Verdict::NotAdmissible: return "not_admissible";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

ContactClass classify_contact(const FluxModel& model, State u_minus, State u_plus,
                              double dead_band) {
  require_same_level(model, u_minus, u_plus);
  const Adsorption bare(0.0);
  ContactClass out;
  out.sigma = level_of(model, u_minus);
  out.minus_region = region(model, bare, u_minus, dead_band);
  out.plus_region = region(model, bare, u_plus, dead_band);

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

  const Verdict algebraic =
      out.config == ContactConfig::Crossing ? Verdict::NotAdmissible : Verdict::Admissible;
  bool dsm = check_dsm(model, u_minus, u_plus);
  if (!dsm && out.config == ContactConfig::Overcompressive) {
    // Same split as for the algebraic criteria: an s-shock to the partner
    // state above the apex, then a 2-family contact.
    if (auto partner = line_roots(model, u_minus.c, out.sigma, 0.0).upper) {
      dsm = check_dsm(model, {*partner, u_minus.c}, u_plus);
    }
  }
  const Verdict dsm_verdict = dsm ? Verdict::Admissible : Verdict::NotAdmissible;
  out.verdicts[static_cast<std::size_t>(Criterion::KeyfitzKranzer)] = algebraic;
  out.verdicts[static_cast<std::size_t>(Criterion::IsaacsonTemple)] = algebraic;
  out.verdicts[static_cast<std::size_t>(Criterion::DeSouzaMarchesin)] = dsm_verdict;
  out.verdicts[static_cast<std::size_t>(Criterion::VanishingAdsorption)] = dsm_verdict;
  return out;
}

bool check_dsm(const FluxModel& model, State u_minus, State u_plus) {
  require_same_level(model, u_minus, u_plus);
  const double level = level_of(model, u_minus);
  const LevelStructure ls = level_bands(model, level);
  const double c_lo = std::min(u_minus.c, u_plus.c);
  const double c_hi = std::max(u_minus.c, u_plus.c);

  const LevelBand* band = nullptr;
  for (const LevelBand& b : ls.bands) {
    if (c_lo >= b.c_lo - kBandTol && c_hi <= b.c_hi + kBandTol) band = &b;
  }
  // Different bands are separated by a gap in c, so any path between them
  // would have to turn around at an apex.
  if (band == nullptr) return false;

  const int branch_minus = branch_of(model, u_minus);
  const int branch_plus = branch_of(model, u_plus);
  if (branch_minus == 0 || branch_plus == 0 || branch_minus == branch_plus) return true;
  // Switching branches without reversing c is only possible where they cross.
  for (double saddle : ls.saddles) {
    if (saddle >= c_lo - kBandTol && saddle <= c_hi + kBandTol) return true;
  }
  return false;
}

double crossing_gap(const FluxModel& model, State u_minus) {
  const Adsorption bare(0.0);
  if (region(model, bare, u_minus) == Region::SFaster) {
    throw Error(ErrorKind::WrongRegion, "crossing_gap needs lambda_s <= lambda_c at U-");
  }
  const double s_star = coincidence_s(model, bare, u_minus.c);
  return std::abs(model.f_s(s_star, u_minus.c) - model.f_s(u_minus.s, u_minus.c));
}

std::vector<double> default_alpha_sequence(int count, double first) {
  std::vector<double> out;
  double a = first;
  for (int k = 0; k < count; ++k) {
    out.push_back(a);
    a *= 0.5;
  }
  return out;
}

VanishingAdsorptionReport vanishing_adsorption_verify(const FluxModel& model,
                                                      const Adsorption& ads_template,
                                                      State u_minus, State u_plus,
                                                      const std::vector<double>& alpha_seq,
                                                      const VanishingAdsorptionOptions& options) {
  if (alpha_seq.empty()) throw Error(ErrorKind::InvalidArgument, "alpha sequence is empty");
  for (std::size_t k = 0; k < alpha_seq.size(); ++k) {
    if (!(alpha_seq[k] > 0.0) || (k > 0 && !(alpha_seq[k] < alpha_seq[k - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "alpha sequence must be positive and strictly decreasing");
    }
  }
  if (!(options.window_hi > options.window_lo)) {
    throw Error(ErrorKind::InvalidArgument, "window must be nonempty");
  }

  VanishingAdsorptionReport report;
  report.contact = classify_contact(model, u_minus, u_plus);
  const RiemannSolution target = single_contact(model, u_minus, u_plus);
  for (double alpha : alpha_seq) {
    const RiemannSolution sol = solve_malpha(model, ads_template.with_alpha(alpha), u_minus, u_plus);
    report.alphas.push_back(alpha);
    report.distances.push_back(l1_distance(sol, target, options.window_lo, options.window_hi));
  }

  const double first = report.distances.front();
  const double last = report.distances.back();
  const double width = options.window_hi - options.window_lo;
  const double diameter = std::abs(u_plus.s - u_minus.s) + std::abs(u_plus.c - u_minus.c);
  const std::size_t n = report.distances.size();
  report.extrapolated = std::numeric_limits<double>::quiet_NaN();
  if (n >= 2) {
    const double a1 = report.alphas[n - 2], a0 = report.alphas[n - 1];
    const double d1 = report.distances[n - 2];
    report.extrapolated = last - (d1 - last) * a0 / (a1 - a0);
  }
  const bool persistent = options.extrapolate && n >= 2 && last > 0.0 &&
                          report.extrapolated > options.limit_ratio * last;
  if (first == 0.0 || (last < options.decay_ratio * first &&
                       last < options.decay_scale * width * diameter && !persistent)) {
    report.verdict = Verdict::Admissible;
  } else if (last > options.persist_ratio * first || persistent) {
    report.verdict = Verdict::NotAdmissible;
  } else {
    report.verdict = Verdict::Inconclusive;
  }

  if (report.contact.config == ContactConfig::Crossing) {
    report.delta = crossing_gap(model, u_minus);
    const State base = u_plus.c > u_minus.c ? u_plus : u_minus;
    const double s_star = coincidence_s(model, Adsorption(0.0), base.c);
    const double spread = std::abs(model.f_s(s_star, base.c) - model.f_s(base.s, base.c));
    double curvature = 0.0;
    constexpr int kProbe = 201;
    for (int i = 0; i < kProbe; ++i) {
      const double s = s_star + (base.s - s_star) * static_cast<double>(i) / (kProbe - 1);
      curvature = std::max(curvature, std::abs(model.f_ss(s, base.c)));
    }
    const double dc = std::abs(u_plus.c - u_minus.c);
    const double fan_term = curvature > 0.0 ? spread * spread / (8.0 * curvature) : 0.0;
    report.floor = 0.5 * std::min(fan_term, dc * spread / 2.0);
  }
  return report;
}

}  // namespace polymer
