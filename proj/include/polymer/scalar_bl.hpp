#pragma once

#include <vector>

#include "polymer/model.hpp"

namespace polymer {

enum class SegmentKind { Shock, Rarefaction };

/// Piece of an s-wave group. s_left/s_right follow the x direction, so a
/// group from s_minus to s_plus starts at s_minus. For a shock both speeds
/// equal the Rankine-Hugoniot speed.
struct SSegment {
  SegmentKind kind = SegmentKind::Shock;
  double s_left = 0.0;
  double s_right = 0.0;
  double speed_left = 0.0;
  double speed_right = 0.0;
};

struct SWaveGroup {
  double c = 0.0;
  double s_minus = 0.0;
  double s_plus = 0.0;
  std::vector<SSegment> segments;
  /// Saturations where a shock attaches to a rarefaction at equal speed.
  std::vector<double> sonic_points;

  bool empty() const noexcept { return segments.empty(); }
  double min_speed() const noexcept;
  double max_speed() const noexcept;
  /// Saturation at xi = x/t; s_minus below the fan, s_plus above,
  /// right-continuous across shocks.
  double sample(const FluxModel& model, double xi) const;
};

/// Oleinik-admissible solution of the scalar problem at fixed c, from the
/// lower convex (s_minus < s_plus) or upper concave (s_minus > s_plus)
/// envelope of f(., c).
SWaveGroup envelope_construct(const FluxModel& model, double c, double s_minus, double s_plus);

/// Chord condition (f(s) - f(s_l)) / (s - s_l) >= sigma for s between s_l and
/// s_r. Throws SpeedMismatch when sigma is not the chord slope.
bool oleinik_check(const FluxModel& model, double c, double s_l, double s_r, double sigma);

/// Saturation inside a rarefaction run where f_s(s, c) = xi.
double invert_s_speed(const FluxModel& model, double c, double s_a, double s_b, double xi);

}  // namespace polymer
