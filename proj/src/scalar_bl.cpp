#include "polymer/scalar_bl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymer/error.hpp"
#include "polymer/numerics.hpp"

namespace polymer {

namespace {

constexpr int kGrid = 2001;
constexpr double kSonicTol = 1e-9;
constexpr double kOleinikTol = 1e-9;
constexpr double kRhTol = 1e-10;

struct Piece {
  SegmentKind kind;
  double a;
  double b;
};

double chord_slope(const FluxModel& model, double c, double a, double b) {
  return (model.f(b, c) - model.f(a, c)) / (b - a);
}

// Point t where the line from (p, f(p)) touches the graph, searched outward
// from `guess` inside the closed interval spanned by `end` and p. The double
// root at t = p itself is kept out of the bracket.
double polish_tangency(const FluxModel& model, double c, double p, double guess, double end,
                       double delta) {
  auto h = [&](double t) { return model.f_s(t, c) * (t - p) - (model.f(t, c) - model.f(p, c)); };
  auto dh = [&](double t) { return model.f_ss(t, c) * (t - p); };
  const double margin = 1e-3 * delta;
  double lim_lo = std::min(end, p);
  double lim_hi = std::max(end, p);
  if (p < end) {
    lim_lo = p + margin;
  } else {
    lim_hi = p - margin;
  }
  double width = 2.0 * delta;
  while (true) {
    const double lo = std::max(lim_lo, guess - width);
    const double hi = std::min(lim_hi, guess + width);
    if (lo < hi) {
      if (auto root = numerics::newton_bisect(h, dh, lo, hi, 1e-14)) return *root;
    }
    if (lo <= lim_lo && hi >= lim_hi) return guess;
    width *= 2.0;
  }
}

}  // namespace

double SWaveGroup::min_speed() const noexcept {
  if (segments.empty()) return std::numeric_limits<double>::quiet_NaN();
  return segments.front().speed_left;
}

double SWaveGroup::max_speed() const noexcept {
  if (segments.empty()) return std::numeric_limits<double>::quiet_NaN();
  return segments.back().speed_right;
}

double invert_s_speed(const FluxModel& model, double c, double s_a, double s_b, double xi) {
  const double lo = std::min(s_a, s_b);
  const double hi = std::max(s_a, s_b);
  auto g = [&](double s) { return model.f_s(s, c) - xi; };
  if (auto root = numerics::bisect(g, lo, hi, 1e-15)) return *root;
  return std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;
}

double SWaveGroup::sample(const FluxModel& model, double xi) const {
  for (const SSegment& seg : segments) {
    if (xi < seg.speed_left) return seg.s_left;
    if (seg.kind == SegmentKind::Rarefaction && xi < seg.speed_right) {
      return invert_s_speed(model, c, seg.s_left, seg.s_right, xi);
    }
  }
  return s_plus;
}

SWaveGroup envelope_construct(const FluxModel& model, double c, double s_minus, double s_plus) {
  SWaveGroup group;
  group.c = c;
  group.s_minus = s_minus;
  group.s_plus = s_plus;
  if (s_minus == s_plus) return group;

  // Points are taken in traversal order (s_minus first). The upper hull walked
  // with decreasing s is the point reflection of a lower hull, and the cross
  // product is invariant under that reflection, so one test covers both.
  std::vector<double> xs(kGrid);
  std::vector<double> ys(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = s_minus + (s_plus - s_minus) * static_cast<double>(i) / (kGrid - 1);
    ys[i] = model.f(xs[i], c);
  }
  xs.back() = s_plus;
  ys.back() = model.f(s_plus, c);

  std::vector<int> hull;
  hull.reserve(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    while (hull.size() >= 2) {
      const int o = hull[hull.size() - 2];
      const int a = hull.back();
      const double cross = (xs[a] - xs[o]) * (ys[i] - ys[o]) - (ys[a] - ys[o]) * (xs[i] - xs[o]);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }

  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const SegmentKind kind = hull[k + 1] - hull[k] == 1 ? SegmentKind::Rarefaction : SegmentKind::Shock;
    if (!pieces.empty() && pieces.back().kind == kind && kind == SegmentKind::Rarefaction) {
      pieces.back().b = xs[hull[k + 1]];
    } else {
      pieces.push_back({kind, xs[hull[k]], xs[hull[k + 1]]});
    }
  }

  const double delta = std::abs(s_plus - s_minus) / (kGrid - 1);

  // Interior chord ends are tangencies; polish them against the opposite end.
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    if (pieces[j].kind != SegmentKind::Shock) continue;
    const bool free_a = pieces[j].a != s_minus;
    const bool free_b = pieces[j].b != s_plus;
    const int passes = free_a && free_b ? 6 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      if (free_a) pieces[j].a = polish_tangency(model, c, pieces[j].b, pieces[j].a, s_minus, delta);
      if (free_b) pieces[j].b = polish_tangency(model, c, pieces[j].a, pieces[j].b, s_plus, delta);
    }
    if (j > 0) pieces[j - 1].b = pieces[j].a;
    if (j + 1 < pieces.size()) pieces[j + 1].a = pieces[j].b;
  }

  // A chord that ends at a data state may still hide a fan narrower than one
  // grid cell; the endpoint speed test exposes it.
  std::vector<Piece> refined;
  for (const Piece& piece : pieces) {
    if (piece.kind != SegmentKind::Shock) {
      refined.push_back(piece);
      continue;
    }
    Piece shock = piece;
    Piece head{SegmentKind::Rarefaction, shock.a, shock.a};
    Piece tail{SegmentKind::Rarefaction, shock.b, shock.b};
    const double sigma = chord_slope(model, c, shock.a, shock.b);
    if (shock.a == s_minus && model.f_s(shock.a, c) < sigma - 1e-12) {
      const double guess = shock.a + (shock.b - shock.a) * std::min(0.5, delta / std::abs(shock.b - shock.a));
      const double t = polish_tangency(model, c, shock.b, guess, shock.a, delta);
      head.b = t;
      shock.a = t;
    }
    if (shock.b == s_plus && model.f_s(shock.b, c) > sigma + 1e-12) {
      const double guess = shock.b - (shock.b - shock.a) * std::min(0.5, delta / std::abs(shock.b - shock.a));
      const double t = polish_tangency(model, c, shock.a, guess, shock.b, delta);
      tail.a = t;
      shock.b = t;
    }
    if (head.a != head.b) refined.push_back(head);
    refined.push_back(shock);
    if (tail.a != tail.b) refined.push_back(tail);
  }

  for (const Piece& piece : refined) {
    if (std::abs(piece.b - piece.a) < 1e-14) continue;
    SSegment seg;
    seg.kind = piece.kind;
    seg.s_left = piece.a;
    seg.s_right = piece.b;
    if (piece.kind == SegmentKind::Shock) {
      seg.speed_left = seg.speed_right = chord_slope(model, c, piece.a, piece.b);
    } else {
      seg.speed_left = model.f_s(piece.a, c);
      seg.speed_right = model.f_s(piece.b, c);
    }
    if (!group.segments.empty()) {
      const SSegment& prev = group.segments.back();
      if (std::abs(prev.speed_right - seg.speed_left) < kSonicTol && prev.kind != seg.kind) {
        group.sonic_points.push_back(seg.s_left);
      }
    }
    group.segments.push_back(seg);
  }
  if (!group.segments.empty()) {
    group.segments.front().s_left = s_minus;
    group.segments.back().s_right = s_plus;
  }
  return group;
}

bool oleinik_check(const FluxModel& model, double c, double s_l, double s_r, double sigma) {
  if (s_l == s_r) {
    throw Error(ErrorKind::InvalidArgument, "oleinik_check needs distinct end states");
  }
  const double rh = chord_slope(model, c, s_l, s_r);
  if (std::abs(rh - sigma) > kRhTol) {
    throw Error(ErrorKind::SpeedMismatch, "sigma differs from the chord slope by " +
                                              std::to_string(std::abs(rh - sigma)));
  }
  const double f_l = model.f(s_l, c);
  constexpr int kSamples = 1001;
  for (int i = 1; i < kSamples - 1; ++i) {
    const double s = s_l + (s_r - s_l) * static_cast<double>(i) / (kSamples - 1);
    if ((model.f(s, c) - f_l) / (s - s_l) < sigma - kOleinikTol) return false;
  }
  // The limits of the chord test at both ends are the endpoint speeds.
  if (model.f_s(s_l, c) < sigma - kOleinikTol) return false;
  if (model.f_s(s_r, c) > sigma + kOleinikTol) return false;
  return true;
}

}  // namespace polymer
