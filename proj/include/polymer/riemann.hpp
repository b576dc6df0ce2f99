#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polymer/admissibility.hpp"
#include "polymer/curves.hpp"
#include "polymer/model.hpp"

namespace polymer {

enum class WaveKind { SShock, SRarefaction, CShock, CRarefaction, Contact };

std::string_view to_string(WaveKind kind) noexcept;

/// Elementary wave. Discontinuities have speed_lo == speed_hi.
struct Wave {
  WaveKind kind = WaveKind::SShock;
  State left;
  State right;
  double speed_lo = 0.0;
  double speed_hi = 0.0;
  /// Contacts and c-shocks.
  std::optional<ContactClass> contact;
  /// c-rarefactions: integral curve from left to right, values = lambda_c.
  std::shared_ptr<const CurveSample> c_fan;

  bool is_discontinuity() const noexcept {
    return kind == WaveKind::SShock || kind == WaveKind::CShock || kind == WaveKind::Contact;
  }
};

class RiemannSolution {
 public:
  RiemannSolution(FluxModel model, Adsorption ads, State left, State right)
      : model_(model), ads_(ads), left_(left), right_(right) {}

  const FluxModel& model() const noexcept { return model_; }
  const Adsorption& adsorption() const noexcept { return ads_; }
  double alpha() const noexcept { return ads_.alpha(); }
  State left() const noexcept { return left_; }
  State right() const noexcept { return right_; }
  const std::vector<Wave>& waves() const noexcept { return waves_; }
  std::vector<Wave>& waves() noexcept { return waves_; }

  std::optional<Criterion> criterion;
  /// Short wave sequence such as "s,c,s".
  std::string structure;

  /// Constant states between waves, U_L first and U_R last.
  std::vector<State> constants() const;
  /// State at xi = x/t with the right-continuous convention at jumps.
  State sample(double xi) const;
  std::vector<State> profile(const std::vector<double>& xis) const;
  /// Wave speeds that bound the smooth pieces of the profile.
  std::vector<double> breakpoints() const;

 private:
  FluxModel model_;
  Adsorption ads_;
  State left_;
  State right_;
  std::vector<Wave> waves_;
};

RiemannSolution solve_m0(const FluxModel& model, State u_left, State u_right, Criterion criterion);

RiemannSolution solve_malpha(const FluxModel& model, const Adsorption& ads, State u_left,
                             State u_right);

/// Single contact (or c-shock when alpha > 0) from u_minus to u_plus, unchecked.
RiemannSolution single_contact(const FluxModel& model, State u_minus, State u_plus);

/// Appends the segments of an s-wave group as individual waves.
void append_s_group(const FluxModel& model, double c, double s_from, double s_to,
                    std::vector<Wave>& waves);

double l1_distance(const RiemannSolution& a, const RiemannSolution& b, double xi_lo = -0.5,
                   double xi_hi = 3.5, int samples = 10000);

struct ValidationReport {
  bool rankine_hugoniot = true;
  bool speed_order = true;
  bool oleinik = true;
  bool contacts = true;
  bool end_states = true;
  double max_rh_residual = 0.0;
  std::vector<std::string> failures;

  bool ok() const noexcept {
    return rankine_hugoniot && speed_order && oleinik && contacts && end_states;
  }
};

ValidationReport validate(const RiemannSolution& sol);

/// The crossing contact from u_left to u_right and the solution that routes
/// through the coincidence locus at c_right.
std::pair<RiemannSolution, RiemannSolution> nonuniqueness_pair(const FluxModel& model,
                                                               State u_left, State u_right);

}  // namespace polymer
