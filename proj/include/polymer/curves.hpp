#pragma once

#include <vector>

#include "polymer/model.hpp"

namespace polymer {

enum class ArchSide { Lower, Upper };

enum class CurveKind { HugoniotC, IntegralC, ContactLevelSet };

/// Ordered states along a c-family curve. `values` holds the speed (Hugoniot,
/// integral curve) or the level f/s (level sets) at each point; `param` is the
/// coordinate the list is monotone in.
struct CurveSample {
  CurveKind kind = CurveKind::IntegralC;
  std::vector<State> points;
  std::vector<double> values;
  std::vector<double> param;
  /// Integral curves only: the target concentration was reached.
  bool reached = false;
  /// Integral curves only: c stopped moving toward the target (apex on the
  /// coincidence locus) or the curve left the unit square.
  bool stalled = false;
};

struct HugoniotPoint {
  State state;
  double sigma = 0.0;
};

/// State at c_target joined to u_minus by a c-discontinuity, on the given side
/// of the arch apex.
HugoniotPoint hugoniot_c_branch(const FluxModel& model, const Adsorption& ads, State u_minus,
                                double c_target, ArchSide side);

/// Integral curve of the c-eigenvector field from u0 toward c_target, never
/// throwing. `side` only matters when u0 sits on the coincidence locus.
CurveSample trace_integral_curve(const FluxModel& model, const Adsorption& ads, State u0,
                                 double c_target, ArchSide side = ArchSide::Lower);

/// As trace_integral_curve but throws StalledAtApex when c_target is not reached.
CurveSample integral_curve(const FluxModel& model, const Adsorption& ads, State u0,
                           double c_target, ArchSide side = ArchSide::Lower);

/// Interval of c where the peak of f/s reaches `level`. An end strictly inside
/// (0,1) where the peak equals the level is an apex of the level set.
struct LevelBand {
  double c_lo = 0.0;
  double c_hi = 1.0;
  bool lo_apex = false;
  bool hi_apex = false;
};

struct LevelStructure {
  double level = 0.0;
  std::vector<LevelBand> bands;
  /// Concentrations where both branches touch at a saddle of f/s.
  std::vector<double> saddles;
  /// The branch above the apex exists only when level >= f(1,c) / 1 = 1.
  bool has_upper = false;
};

LevelStructure level_bands(const FluxModel& model, double level, double saddle_tol = 1e-9);

/// Peak of f/s over s at fixed c (the contact speed on the coincidence locus).
double apex_level(const FluxModel& model, double c);

struct LevelSetComponent {
  double level = 0.0;
  /// One branch for an arch (monotone in s), or the separate legs (monotone in
  /// c) when the band spans the whole range or passes a saddle.
  std::vector<CurveSample> branches;
  bool through_saddle = false;
};

LevelSetComponent contact_level_set(const FluxModel& model, State u0);

struct SigmaBounds {
  double sigma_min = 0.0;
  double c_at_min = 0.5;
  double s_at_min = 0.0;
  double sigma_max = 0.0;
  double s_at_max = 0.0;
};

/// Tangent slopes from Q(alpha) = (-alpha a1(1), 0): minimum over c and the
/// value at c = 0.
SigmaBounds sigma_min_max(const FluxModel& model, const Adsorption& ads);

struct SaddlePoint {
  State state;
  double determinant = 0.0;
};

SaddlePoint saddle_point_A(const FluxModel& model);

}  // namespace polymer
