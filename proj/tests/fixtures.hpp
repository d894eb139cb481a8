#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "sio/sio.hpp"

namespace fixtures {

using sio::Complex;

/// Polyline curve from a point list, accumulating chord arclength and
/// dropping consecutive duplicates.
inline sio::CurveSpec make_curve(const std::vector<Complex>& raw,
                                 std::vector<sio::WhirlPoint> whirl = {}) {
  std::vector<Complex> pts;
  std::vector<double> s;
  for (const Complex& p : raw) {
    if (!pts.empty() && std::abs(p - pts.back()) <= 0.0) continue;
    if (pts.empty()) {
      s.push_back(0.0);
    } else {
      double next = s.back() + std::abs(p - pts.back());
      // chords below the arclength resolution still need strictly
      // increasing parameters
      if (next <= s.back()) next = std::nextafter(s.back(), 1e300);
      s.push_back(next);
    }
    pts.push_back(p);
  }
  return sio::CurveSpec(std::move(s), std::move(pts), std::move(whirl));
}

/// Unit square through the origin, with geometric sample densification along
/// both edges incident to the corner at 0 (radii down to r_min). Deep-scale
/// weight-node fixtures live at this corner.
inline sio::CurveSpec corner_curve(double r_min = 1e-18,
                                   int pts_per_decade = 24) {
  std::vector<Complex> pts;
  pts.push_back(Complex(0.0, 0.0));
  int decades_steps = static_cast<int>(std::log10(1.0 / r_min) *
                                       static_cast<double>(pts_per_decade));
  for (int i = 0; i <= decades_steps; ++i) {
    double r = r_min * std::pow(1.0 / r_min,
                                static_cast<double>(i) /
                                    static_cast<double>(decades_steps));
    pts.push_back(Complex(r, 0.0));
  }
  const int coarse = 64;
  for (int i = 1; i <= coarse; ++i)
    pts.push_back(Complex(1.0, static_cast<double>(i) / coarse));
  for (int i = 1; i <= coarse; ++i)
    pts.push_back(Complex(1.0 - static_cast<double>(i) / coarse, 1.0));
  for (int i = decades_steps; i >= 0; --i) {
    double r = r_min * std::pow(1.0 / r_min,
                                static_cast<double>(i) /
                                    static_cast<double>(decades_steps));
    pts.push_back(Complex(0.0, r));
  }
  pts.push_back(Complex(0.0, 0.0));
  return make_curve(pts);
}

/// Closed curve whirling at the origin with spirality index delta: two
/// logarithmic spiral branches tau = +-s e^{-i delta ln s} joined by an outer
/// circular arc.
inline sio::CurveSpec spiral_curve(double delta, double s_min = 1e-6,
                                   double s_max = 0.5,
                                   int pts_per_decade = 96) {
  std::vector<Complex> pts;
  pts.push_back(Complex(0.0, 0.0));
  int n = static_cast<int>(std::log10(s_max / s_min) *
                           static_cast<double>(pts_per_decade));
  auto branch_a = [&](int i) {
    double s = s_min * std::pow(s_max / s_min,
                                static_cast<double>(i) / static_cast<double>(n));
    return s * std::exp(Complex(0.0, -delta * std::log(s)));
  };
  for (int i = 0; i <= n; ++i) pts.push_back(branch_a(i));
  double phi0 = -delta * std::log(s_max);
  const int arc = 1024;
  for (int i = 1; i < arc; ++i) {
    double phi = phi0 + 3.141592653589793 * static_cast<double>(i) / arc;
    pts.push_back(s_max * std::exp(Complex(0.0, phi)));
  }
  for (int i = n; i >= 0; --i) pts.push_back(-branch_a(i));
  pts.push_back(Complex(0.0, 0.0));
  return make_curve(pts, {{Complex(0.0, 0.0), delta}});
}

/// Log-periodic weight profile with alternating power blocks: slope 0.3 on
/// [-14.2, 0] mod 28.4, slope 0.6 on [-28.4, -14.2] mod 28.4, tabulated at
/// the breakpoints down to x = e^{-70}. Its estimated index pair at K = 6 is
/// (0.3, 0.6).
inline sio::WeightProfile block_profile() {
  const double us[] = {0.0, -14.2, -28.4, -42.6, -56.8, -70.0};
  const double slopes[] = {0.3, 0.6, 0.3, 0.6, 0.3};
  std::vector<std::pair<double, double>> samples;
  double S = 0.0;
  samples.emplace_back(1.0, 1.0);
  for (int b = 0; b < 5; ++b) {
    S += slopes[b] * (us[b + 1] - us[b]);
    samples.emplace_back(std::exp(us[b + 1]), std::exp(S));
  }
  return sio::WeightProfile::sampled(std::move(samples));
}

/// Options matched to block_profile: short windows (K = 6) that fit inside a
/// block, with a y-grid deep enough that every cutoff still sees full blocks
/// of both slopes.
inline sio::PhiOptions block_phi_options() {
  sio::PhiOptions opt;
  opt.K = 6;
  opt.tail_decades = 10.0;
  return opt;
}

inline sio::PowerlikenessOptions block_power_options() {
  sio::PowerlikenessOptions opt;
  opt.K = 6;
  opt.R_min = 1e-12;
  return opt;
}

/// Sampled profile from a positive function on a geometric x-grid.
inline sio::WeightProfile sampled_profile(
    const std::function<double(double)>& log_rho_of_log_x, double x_lo,
    double x_hi, int pts_per_decade = 64) {
  int n = std::max(8, static_cast<int>(std::log10(x_hi / x_lo) *
                                       static_cast<double>(pts_per_decade)));
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i <= n; ++i) {
    double lx = std::log(x_lo) + (std::log(x_hi) - std::log(x_lo)) *
                                     static_cast<double>(i) /
                                     static_cast<double>(n);
    samples.emplace_back(std::exp(lx), std::exp(log_rho_of_log_x(lx)));
  }
  return sio::WeightProfile::sampled(std::move(samples));
}

/// Scalar symbol on the unit circle taking value `upper` on the open upper
/// arc and `lower` on the open lower arc, with jumps at 1 and -1.
inline sio::PcSymbol arc_jump_symbol(Complex upper, Complex lower,
                                     int samples_per_arc = 64) {
  std::vector<sio::PcSymbol::BackgroundSample> bg;
  sio::MatrixXc mu(1, 1), ml(1, 1);
  mu(0, 0) = upper;
  ml(0, 0) = lower;
  for (int i = 1; i < samples_per_arc; ++i) {
    double th = 3.141592653589793 * static_cast<double>(i) / samples_per_arc;
    bg.push_back({th, mu});
    bg.push_back({th + 3.141592653589793, ml});
  }
  std::vector<sio::PcSymbol::Jump> jumps = {
      {Complex(1.0, 0.0), ml, mu},   // crossing t = 1 in orientation
      {Complex(-1.0, 0.0), mu, ml},  // crossing t = -1
  };
  return sio::PcSymbol(1, std::move(bg), std::move(jumps));
}

/// Problem on the unit circle with constant exponent and no weight.
inline sio::ProblemInstance circle_problem(double p = 2.0, int n = 1024) {
  return sio::ProblemInstance(sio::CurveSpec::unit_circle(n),
                              sio::ExponentSpec::constant(p),
                              sio::RadialWeightSpec());
}

/// Circle problem with prescribed local data (delta, mu, nu) at t = 1,
/// pre-seeded into the per-point cache.
inline sio::ProblemInstance seeded_problem(double p, double delta, double mu,
                                           double nu, int n = 256) {
  sio::RadialWeightSpec weight(
      {{Complex(1.0, 0.0), sio::WeightProfile::power(0.0)}});
  sio::ProblemInstance problem(sio::CurveSpec::unit_circle(n),
                               sio::ExponentSpec::constant(p), weight);
  problem.cache_point_indices(Complex(1.0, 0.0), {mu, nu});
  problem.cache_delta(Complex(1.0, 0.0), delta);
  return problem;
}

/// Dense theta-grid oracle for the all-theta integer-avoidance condition:
/// the affine value E + theta mu + (1 - theta) nu meets an integer iff a grid
/// value is integral or the floor changes between neighbors.
inline bool theta_grid_hits_integer(double E, double mu, double nu,
                                    int grid = 10000) {
  double prev_floor = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double theta = static_cast<double>(i) / grid;
    double v = E + theta * mu + (1.0 - theta) * nu;
    if (v == std::floor(v)) return true;
    if (i > 0 && std::floor(v) != prev_floor) return true;
    prev_floor = std::floor(v);
  }
  return false;
}

}  // namespace fixtures
