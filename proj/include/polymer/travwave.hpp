#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "polymer/curves.hpp"
#include "polymer/model.hpp"

namespace polymer {

/// Traveling-wave ODE of the viscous adsorption model,
///   s' = f(s,c) - sigma (s + alpha a1(1)),
///   c' = (sigma alpha / kappa) (a1(1) c - a1(c)).
struct TWSystem {
  FluxModel model;
  Adsorption ads;
  double kappa = 1.0;
  double sigma = 1.0;
};

std::array<double, 2> tw_rhs(const TWSystem& sys, State u);

enum class EquilibriumType { Saddle, Repeller, Attractor, Degenerate };

std::string_view to_string(EquilibriumType type) noexcept;

struct Equilibrium {
  State state;
  EquilibriumType type = EquilibriumType::Degenerate;
  double eig_s = 0.0;
  double eig_c = 0.0;
};

/// The two rest points on the invariant line c = c_edge, lower saturation first.
std::vector<Equilibrium> equilibria_at_edge(const TWSystem& sys, double c_edge);

struct ShootOptions {
  double alpha_bar = 0.5;
  double seed_offset = 1e-8;
  double match_c = 0.5;
  double mismatch_tol = 1e-9;
  int max_bisections = 200;
  /// Report s_stable - s_unstable instead of s_unstable - s_stable.
  bool flip_mismatch = false;
};

struct Connection {
  double sigma = 0.0;
  State u_minus;
  State u_plus;
  /// Heteroclinic orbit ordered by xi; param holds xi.
  CurveSample orbit;
  double mismatch = 0.0;
  int iterations = 0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

/// s-mismatch at the matching section between the unstable manifold of U-
/// and the stable manifold of U+ for a given speed.
double shooting_mismatch(const FluxModel& model, const Adsorption& ads, double kappa,
                         double sigma, const ShootOptions& options = {});

Connection shoot_connection(const FluxModel& model, const Adsorption& ads, double kappa,
                            const ShootOptions& options = {});

/// alpha = 0 limit: contact speed through the saddle and its end states.
struct UndercompressiveData {
  double sigma = 0.0;
  State u_minus;
  State u_plus;
};

UndercompressiveData undercompressive_contact(const FluxModel& model);

struct LimitRow {
  double alpha = 0.0;
  double sigma = 0.0;
  State u_minus;
  State u_plus;
  double err_sigma = 0.0;
  double err_s_minus = 0.0;
  double err_s_plus = 0.0;
  double rh_residual = 0.0;
  Connection connection;
};

struct LimitStudy {
  double kappa = 1.0;
  UndercompressiveData limit;
  std::vector<LimitRow> rows;
  /// log(err_k / err_{k+1}) / log(alpha_k / alpha_{k+1}) for sigma.
  std::vector<double> sigma_order;
};

LimitStudy limit_study(const FluxModel& model, const Adsorption& ads_template, double kappa,
                       const std::vector<double>& alpha_seq, const ShootOptions& options = {});

}  // namespace polymer
