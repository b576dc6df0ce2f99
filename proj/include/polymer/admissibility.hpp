#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "polymer/model.hpp"

namespace polymer {

enum class ContactConfig { OneFamily, TwoFamily, Overcompressive, Crossing, Boundary };

enum class Criterion { KeyfitzKranzer, IsaacsonTemple, DeSouzaMarchesin, VanishingAdsorption };

enum class Verdict { Admissible, NotAdmissible, Inconclusive };

std::string_view to_string(ContactConfig config) noexcept;
std::string_view to_string(Criterion criterion) noexcept;
std::string_view to_string(Verdict verdict) noexcept;

struct ContactClass {
  ContactConfig config = ContactConfig::Boundary;
  Region minus_region = Region::Coincident;
  Region plus_region = Region::Coincident;
  double sigma = 0.0;
  /// Indexed by Criterion. The vanishing-adsorption slot mirrors de Souza-Marchesin
  /// until a numerical verification replaces it.
  std::array<Verdict, 4> verdicts{Verdict::Inconclusive, Verdict::Inconclusive,
                                  Verdict::Inconclusive, Verdict::Inconclusive};

  Verdict verdict(Criterion criterion) const noexcept {
    return verdicts[static_cast<std::size_t>(criterion)];
  }
  bool admissible(Criterion criterion) const noexcept {
    return verdict(criterion) == Verdict::Admissible;
  }
};

/// Characteristic configuration of an alpha = 0 contact from u_minus to u_plus
/// and its verdict under each criterion. An overcompressive contact counts as
/// admissible under the algebraic criteria because it splits into an s-shock
/// and a 2-family contact of the same speed.
ContactClass classify_contact(const FluxModel& model, State u_minus, State u_plus,
                              double dead_band = 1e-9);

/// True when a path along level sets of f/s joins u_minus to u_plus with c
/// monotone, switching branches only at saddle junctions.
bool check_dsm(const FluxModel& model, State u_minus, State u_plus);

/// |f_s(U*) - f_s(u_minus)| with U* on the coincidence locus at c_minus.
double crossing_gap(const FluxModel& model, State u_minus);

struct VanishingAdsorptionOptions {
  double window_lo = -0.5;
  double window_hi = 3.5;
  double decay_ratio = 0.05;
  double decay_scale = 0.02;
  double persist_ratio = 0.5;
  /// Distances converge at first order in alpha, so the last two give a
  /// linear estimate of the alpha -> 0 limit. A contact whose estimated limit
  /// exceeds limit_ratio times the last distance is not admissible even when
  /// the alpha = first transient dominates.
  bool extrapolate = true;
  double limit_ratio = 0.5;
};

struct VanishingAdsorptionReport {
  std::vector<double> alphas;
  std::vector<double> distances;
  Verdict verdict = Verdict::Inconclusive;
  /// Linear estimate of the alpha -> 0 distance (NaN with fewer than two alphas).
  double extrapolated = 0.0;
  /// Crossing contacts only: crossing_gap(U-) and a lower bound on the limit
  /// distance from the persistent s-rarefaction. The bound uses the
  /// coincidence point at the larger of c- and c+, where the M_alpha path turns.
  double delta = 0.0;
  double floor = 0.0;
  ContactClass contact;
};

/// Solves the adsorption problem for each alpha and measures the L1 distance
/// to the bare contact. Verdict thresholds come from `options`.
VanishingAdsorptionReport vanishing_adsorption_verify(const FluxModel& model,
                                                      const Adsorption& ads_template,
                                                      State u_minus, State u_plus,
                                                      const std::vector<double>& alpha_seq,
                                                      const VanishingAdsorptionOptions& options = {});

std::vector<double> default_alpha_sequence(int count = 7, double first = 0.1);

}  // namespace polymer
