#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sio/types.hpp"

namespace sio {

/// The set S(z1,z2;delta;a,b): the union over c in [a,b] of the logarithmic
/// double spirals where (1/2pi)(arg w - delta log|w|) = c mod 1, with
/// w = (u - z1)/(u - z2), together with the endpoints themselves.
struct SpiralicHorn {
  Complex z1, z2;
  double delta = 0.0;
  double a = 0.5, b = 0.5;

  SpiralicHorn(Complex z1_, Complex z2_, double delta_, double a_, double b_)
      : z1(z1_), z2(z2_), delta(delta_), a(a_), b(b_) {
    require(a <= b, "SpiralicHorn: need a <= b");
  }

  bool degenerate_point() const { return z1 == z2; }

  /// Level value v(u) = (1/2pi)(arg w - delta log|w|), defined mod 1.
  double level_value(Complex u) const {
    Complex w = (u - z1) / (u - z2);
    return (std::arg(w) - delta * std::log(std::abs(w))) / kTwoPi;
  }
};

/// Membership test with a small level tolerance so that points computed on a
/// boundary spiral (exact up to rounding) are always members.
inline bool membership(const SpiralicHorn& h, Complex u, double tol = 1e-9) {
  if (h.degenerate_point()) return u == h.z1;
  if (u == h.z1 || u == h.z2) return true;
  double f = frac(h.level_value(u) - h.a);
  return f <= h.b - h.a + tol || f >= 1.0 - tol;
}

struct BoundaryCurve {
  std::vector<Complex> points;
  int skipped = 0;  // samples dropped near the w = 1 pole (curve through infinity)
};

/// Level set at c as the Moebius image of the log spiral
/// w(s) = e^{s + i(delta s + 2 pi c)}; u = (z1 - z2 w)/(1 - w).
inline BoundaryCurve boundary_curve(const SpiralicHorn& h, double c,
                                    double s_min = -8.0, double s_max = 8.0,
                                    int n_points = 2048,
                                    double pole_tol = 1e-9) {
  require(!h.degenerate_point(), "boundary_curve: degenerate point has no boundary");
  require(n_points >= 2, "boundary_curve: need at least 2 points");
  BoundaryCurve out;
  out.points.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    double s = s_min + (s_max - s_min) * static_cast<double>(i) /
                           static_cast<double>(n_points - 1);
    Complex w = std::exp(Complex(s, h.delta * s + kTwoPi * c));
    if (std::abs(1.0 - w) < pole_tol) {
      ++out.skipped;
      continue;
    }
    out.points.push_back((h.z1 - h.z2 * w) / (1.0 - w));
  }
  return out;
}

/// Point cloud of the region: boundary curves over a uniform c-grid spanning
/// [a, b], endpoints z1 and z2 always appended.
inline std::vector<Complex> sample_region(const SpiralicHorn& h,
                                          int c_grid_size = 64,
                                          double s_min = -8.0,
                                          double s_max = 8.0,
                                          int n_points = 2048) {
  if (h.degenerate_point()) return {h.z1};
  std::vector<Complex> out;
  int nc = (h.a == h.b) ? 1 : std::max(2, c_grid_size);
  for (int j = 0; j < nc; ++j) {
    double c = (nc == 1) ? h.a
                         : h.a + (h.b - h.a) * static_cast<double>(j) /
                                     static_cast<double>(nc - 1);
    BoundaryCurve bc = boundary_curve(h, c, s_min, s_max, n_points);
    out.insert(out.end(), bc.points.begin(), bc.points.end());
  }
  out.push_back(h.z1);
  out.push_back(h.z2);
  return out;
}

enum class HornShape {
  point,
  segment,
  circular_arc,
  horn,
  double_spiral,
  spiralic_horn,
};

inline HornShape classify(const SpiralicHorn& h) {
  if (h.degenerate_point()) return HornShape::point;
  if (h.delta == 0.0) {
    if (h.a == h.b) return h.a == 0.5 ? HornShape::segment : HornShape::circular_arc;
    return HornShape::horn;
  }
  if (h.a == h.b) return HornShape::double_spiral;
  return HornShape::spiralic_horn;
}

inline const char* shape_name(HornShape s) {
  switch (s) {
    case HornShape::point: return "point";
    case HornShape::segment: return "segment";
    case HornShape::circular_arc: return "circular_arc";
    case HornShape::horn: return "horn";
    case HornShape::double_spiral: return "double_spiral";
    case HornShape::spiralic_horn: return "spiralic_horn";
  }
  return "unknown";
}

}  // namespace sio
