#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace polymer {

/// Point in the (saturation, concentration) unit square.
struct State {
  double s = 0.0;
  double c = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

enum class FluxFamily { MonotoneCorey, Boomerang };

std::string_view to_string(FluxFamily family) noexcept;

struct FluxDerivatives {
  double f = 0.0;
  double f_s = 0.0;
  double f_c = 0.0;
  double f_ss = 0.0;
  double f_sc = 0.0;
  double f_cc = 0.0;
};

/// Fractional flow f(s,c) = s^2 / (s^2 + mu(c) (1-s)^2) with a quadratic
/// viscosity ratio mu(c) = m0 + m1 c + m2 c^2.
class FluxModel {
 public:
  /// mu(c) = mu0 + slope * c. Requires slope > 0 so that f_c < 0.
  static FluxModel monotone_corey(double mu0 = 1.0, double slope = 1.0);
  /// mu(c) = mu0 + bulge * c (1 - c). Symmetric about c = 0.5, so f(s,0) = f(s,1).
  static FluxModel boomerang(double mu0 = 1.0, double bulge = 4.0);

  FluxFamily family() const noexcept { return family_; }
  std::string_view name() const noexcept { return to_string(family_); }
  const std::array<double, 3>& mu_coefficients() const noexcept { return mu_; }

  double mu(double c) const noexcept { return mu_[0] + c * (mu_[1] + c * mu_[2]); }
  double mu_prime(double c) const noexcept { return mu_[1] + 2.0 * mu_[2] * c; }
  double mu_second() const noexcept { return 2.0 * mu_[2]; }

  FluxDerivatives eval(State u) const noexcept;
  double f(double s, double c) const noexcept;
  double f_s(double s, double c) const noexcept;
  double f_ss(double s, double c) const noexcept;

 private:
  FluxModel(FluxFamily family, std::array<double, 3> mu);

  FluxFamily family_;
  std::array<double, 3> mu_;
};

/// Langmuir isotherm a1(c) = capacity * c / (1 + affinity * c), scaled by alpha
/// in the accumulation term.
class Adsorption {
 public:
  explicit Adsorption(double alpha = 0.0, double capacity = 2.0, double affinity = 1.0);

  double alpha() const noexcept { return alpha_; }
  double capacity() const noexcept { return capacity_; }
  double affinity() const noexcept { return affinity_; }
  Adsorption with_alpha(double alpha) const { return Adsorption(alpha, capacity_, affinity_); }

  double a1(double c) const noexcept;
  double a1_prime(double c) const noexcept;
  double a1_second(double c) const noexcept;
  /// Mean of a1' over [c_minus, c_plus]; a1'(c_minus) when the interval is empty.
  double secant(double c_minus, double c_plus) const noexcept;

 private:
  double alpha_;
  double capacity_;
  double affinity_;
};

struct CharSpeeds {
  double lambda_s = 0.0;
  double lambda_c = 0.0;
};

/// Position relative to the coincidence locus.
enum class Region { SFaster, CFaster, Coincident };

std::string_view to_string(Region region) noexcept;

FluxDerivatives eval_flux(const FluxModel& model, State u) noexcept;

CharSpeeds char_speeds(const FluxModel& model, const Adsorption& ads, State u);

/// c-family right eigenvector (-f_c, lambda_s - lambda_c).
std::array<double, 2> c_eigenvector(const FluxModel& model, const Adsorption& ads, State u);

double lin_degeneracy(const FluxModel& model, const Adsorption& ads, State u);

double a1_secant(const Adsorption& ads, double c_minus, double c_plus) noexcept;

/// Saturation where the line through (-offset, 0) touches f(., c) from above,
/// i.e. f_s(s) (s + offset) = f(s). For offset >= 0 it is the maximiser of
/// f / (s + offset).
double tangency_s(const FluxModel& model, double c, double offset);

double coincidence_s(const FluxModel& model, const Adsorption& ads, double c);

struct LineRoots {
  std::optional<double> lower;
  std::optional<double> upper;
  double apex = 0.0;
};

/// Solutions of f(s,c) = slope * (s + offset) on [0,1], one on each side of the
/// tangency saturation. A tangent line returns the apex for both.
LineRoots line_roots(const FluxModel& model, double c, double slope, double offset);

/// Peak of f / (s + offset) over s at fixed c.
double peak_ratio(const FluxModel& model, double c, double offset);

Region region(const FluxModel& model, const Adsorption& ads, State u, double dead_band = 1e-9);

}  // namespace polymer
