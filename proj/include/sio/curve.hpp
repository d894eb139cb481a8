#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sio/types.hpp"

namespace sio {

struct WhirlPoint {
  Complex point;
  double delta = 0.0;
};

/// Closed Jordan curve as an arclength-parametrized polyline. Portions
/// Gamma(t,R) and all arg(tau - t) quantities are computed from the samples.
class CurveSpec {
 public:
  CurveSpec(std::vector<double> arclength, std::vector<Complex> points,
            std::vector<WhirlPoint> whirl = {}, double total_length = 0.0)
      : s_(std::move(arclength)), pts_(std::move(points)),
        whirl_(std::move(whirl)) {
    require(s_.size() == pts_.size(), "CurveSpec: arclength/point size mismatch");
    require(s_.size() >= 4, "CurveSpec: too few samples");
    for (std::size_t i = 1; i < s_.size(); ++i)
      require(s_[i] > s_[i - 1], "CurveSpec: arclength must be strictly increasing");
    total_length_ = total_length > 0.0 ? total_length : s_.back() - s_.front();
    double scale = diameter_estimate();
    require(std::abs(pts_.front() - pts_.back()) <= 1e-6 * scale,
            "CurveSpec: curve must close (first and last point coincide)");
    for (const auto& wp : whirl_)
      require(distance_to_samples(wp.point) <=
                  std::max(1e-9 * scale, 2.0 * max_segment_length()),
              "CurveSpec: whirl point not on the sampled curve");
  }

  std::size_t size() const { return pts_.size(); }
  const std::vector<double>& arclengths() const { return s_; }
  const std::vector<Complex>& points() const { return pts_; }
  double total_length() const { return total_length_; }
  const std::vector<WhirlPoint>& whirl_points() const { return whirl_; }

  std::size_t segment_count() const { return pts_.size() - 1; }
  Complex segment_a(std::size_t i) const { return pts_[i]; }
  Complex segment_b(std::size_t i) const { return pts_[i + 1]; }
  double segment_length(std::size_t i) const {
    return std::abs(pts_[i + 1] - pts_[i]);
  }

  double max_segment_length() const {
    double m = 0.0;
    for (std::size_t i = 0; i < segment_count(); ++i)
      m = std::max(m, segment_length(i));
    return m;
  }

  double diameter_estimate() const {
    double lo_re = 1e300, hi_re = -1e300, lo_im = 1e300, hi_im = -1e300;
    for (const auto& p : pts_) {
      lo_re = std::min(lo_re, p.real());
      hi_re = std::max(hi_re, p.real());
      lo_im = std::min(lo_im, p.imag());
      hi_im = std::max(hi_im, p.imag());
    }
    return std::hypot(hi_re - lo_re, hi_im - lo_im);
  }

  double distance_to_samples(Complex t) const {
    double d = 1e300;
    for (const auto& p : pts_) d = std::min(d, std::abs(p - t));
    return d;
  }

  std::size_t nearest_sample(Complex t) const {
    std::size_t best = 0;
    double d = 1e300;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      double di = std::abs(pts_[i] - t);
      if (di < d) {
        d = di;
        best = i;
      }
    }
    return best;
  }

  double arclength_of(Complex t) const { return s_[nearest_sample(t)]; }

  /// max_tau |tau - t|.
  double max_distance(Complex t) const {
    double d = 0.0;
    for (const auto& p : pts_) d = std::max(d, std::abs(p - t));
    return d;
  }

  /// Declared spirality index at t, if a whirl point is declared there.
  const WhirlPoint* declared_whirl(Complex t, double tol = 1e-7) const {
    for (const auto& wp : whirl_)
      if (std::abs(wp.point - t) <= tol) return &wp;
    return nullptr;
  }

  static CurveSpec unit_circle(int n = 1024) {
    std::vector<double> s(static_cast<std::size_t>(n + 1));
    std::vector<Complex> p(s.size());
    for (int i = 0; i <= n; ++i) {
      double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      s[static_cast<std::size_t>(i)] = th;
      p[static_cast<std::size_t>(i)] = Complex(std::cos(th), std::sin(th));
    }
    p.back() = p.front();
    return CurveSpec(std::move(s), std::move(p), {}, kTwoPi);
  }

 private:
  std::vector<double> s_;
  std::vector<Complex> pts_;
  std::vector<WhirlPoint> whirl_;
  double total_length_ = 0.0;
};

/// |Gamma(t,R)| for one t across an ascending R grid, by an event sweep over
/// segment [dmin, dmax] distance ranges with linear partial inclusion.
inline std::vector<double> portion_lengths(const CurveSpec& curve, Complex t,
                                           const std::vector<double>& R_grid) {
  struct Seg {
    double dmin, dmax, len;
  };
  std::vector<Seg> segs;
  segs.reserve(curve.segment_count());
  // segments with nearly equidistant endpoints (chords seen from their
  // circumcenter) are treated atomically: the linear partial-inclusion slope
  // len / (dmax - dmin) would overflow
  std::vector<std::pair<double, double>> shell;  // (distance, length)
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    double d0 = std::abs(curve.segment_a(i) - t);
    double d1 = std::abs(curve.segment_b(i) - t);
    double dmin = std::min(d0, d1), dmax = std::max(d0, d1);
    if (dmax - dmin <= 1e-9 * dmax)
      shell.emplace_back(dmax, curve.segment_length(i));
    else
      segs.push_back({dmin, dmax, curve.segment_length(i)});
  }
  std::sort(shell.begin(), shell.end());
  std::vector<std::size_t> by_min(segs.size()), by_max(segs.size());
  std::iota(by_min.begin(), by_min.end(), std::size_t{0});
  by_max = by_min;
  std::sort(by_min.begin(), by_min.end(),
            [&](std::size_t a, std::size_t b) { return segs[a].dmin < segs[b].dmin; });
  std::sort(by_max.begin(), by_max.end(),
            [&](std::size_t a, std::size_t b) { return segs[a].dmax < segs[b].dmax; });

  std::vector<double> out(R_grid.size());
  std::size_t im = 0, ix = 0, is = 0;
  double full = 0.0, slope_sum = 0.0, offset_sum = 0.0;
  for (std::size_t r = 0; r < R_grid.size(); ++r) {
    double R = R_grid[r];
    while (is < shell.size() && shell[is].first <= R) {
      full += shell[is].second;
      ++is;
    }
    while (im < by_min.size() && segs[by_min[im]].dmin < R) {
      const Seg& sg = segs[by_min[im]];
      double delta = std::max(sg.dmax - sg.dmin, 1e-300);
      slope_sum += sg.len / delta;
      offset_sum += sg.len * sg.dmin / delta;
      ++im;
    }
    while (ix < by_max.size() && segs[by_max[ix]].dmax <= R) {
      const Seg& sg = segs[by_max[ix]];
      double delta = std::max(sg.dmax - sg.dmin, 1e-300);
      slope_sum -= sg.len / delta;
      offset_sum -= sg.len * sg.dmin / delta;
      full += sg.len;
      ++ix;
    }
    out[r] = full + R * slope_sum - offset_sum;
  }
  return out;
}

/// sup over the grids of |Gamma(t,R)| / R (the Carleson constant estimate).
inline double carleson_constant(const CurveSpec& curve,
                                const std::vector<Complex>& t_grid,
                                const std::vector<double>& R_grid) {
  require(!t_grid.empty() && !R_grid.empty(), "carleson_constant: empty grid");
  double r_min = *std::min_element(R_grid.begin(), R_grid.end());
  require(r_min >= 2.0 * curve.max_segment_length(),
          "carleson_constant: R grid below sample resolution");
  double best = 0.0;
  for (const auto& t : t_grid) {
    std::vector<double> grid = R_grid;
    grid.push_back(curve.max_distance(t));  // the sup is often attained here
    std::sort(grid.begin(), grid.end());
    std::vector<double> lens = portion_lengths(curve, t, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      best = std::max(best, lens[i] / grid[i]);
  }
  return best;
}

/// Convenience: default t x R grids of the given sizes.
inline double carleson_constant(const CurveSpec& curve, int t_count = 256,
                                int R_count = 256) {
  std::vector<Complex> ts;
  std::size_t stride =
      std::max<std::size_t>(1, curve.size() / static_cast<std::size_t>(t_count));
  for (std::size_t i = 0; i < curve.size(); i += stride)
    ts.push_back(curve.points()[i]);
  double R_lo = 2.0 * curve.max_segment_length();
  double R_hi = 1.05 * curve.diameter_estimate();
  std::vector<double> Rs(static_cast<std::size_t>(R_count));
  for (int i = 0; i < R_count; ++i)
    Rs[static_cast<std::size_t>(i)] =
        R_lo * std::pow(R_hi / R_lo, static_cast<double>(i) /
                                         static_cast<double>(R_count - 1));
  return carleson_constant(curve, ts, Rs);
}

struct SpiralityFitWindow {
  double r_min = 1e-8;
  double r_max = 0.0;  // 0: use 0.3 * max distance
  std::size_t min_samples = 32;
  double min_decades = 3.0;
};

struct SpiralityFit {
  double delta = 0.0;
  double residual = 0.0;  // rms of the arg regression residual
};

namespace detail {

/// Walks from the sample nearest t in direction dir, unwrapping arg(tau - t),
/// and least-squares fits arg = -delta * log|tau - t| + const over the window.
inline bool spirality_side(const CurveSpec& curve, Complex t, int dir,
                           const SpiralityFitWindow& win, double r_max,
                           double& delta, double& residual, std::size_t& count) {
  const auto& pts = curve.points();
  std::size_t n = pts.size() - 1;  // last sample repeats the first
  std::size_t i0 = curve.nearest_sample(t) % n;
  std::vector<double> xs, ys;
  double prev_arg = 0.0;
  bool have_prev = false;
  for (std::size_t step = 1; step <= n / 2; ++step) {
    std::size_t i =
        (i0 + static_cast<std::size_t>(dir > 0 ? step : n - step)) % n;
    Complex d = pts[i] - t;
    double r = std::abs(d);
    if (r <= 0.0) continue;
    double a = std::atan2(d.imag(), d.real());
    if (have_prev) {
      while (a - prev_arg > 3.141592653589793) a -= kTwoPi;
      while (a - prev_arg < -3.141592653589793) a += kTwoPi;
    }
    prev_arg = a;
    have_prev = true;
    if (r >= win.r_min && r <= r_max) {
      xs.push_back(-std::log(r));
      ys.push_back(a);
    }
    if (r > r_max) break;  // left the window walking outward
  }
  count = xs.size();
  if (count < win.min_samples) return false;
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if ((*hi - *lo) / std::log(10.0) < win.min_decades) return false;
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(count);
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  delta = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double e = ys[i] - my - delta * (xs[i] - mx);
    ss += e * e;
  }
  residual = std::sqrt(ss / static_cast<double>(count));
  return true;
}

}  // namespace detail

/// Estimates the spirality index delta(t) from the logarithmic whirl relation
/// arg(tau - t) = -delta log|tau - t| + O(1) by per-side regression.
inline SpiralityFit spirality_delta(const CurveSpec& curve, Complex t,
                                    const SpiralityFitWindow& win = {}) {
  double r_max = win.r_max > 0.0 ? win.r_max : 0.3 * curve.max_distance(t);
  double d1 = 0.0, d2 = 0.0, r1 = 0.0, r2 = 0.0;
  std::size_t c1 = 0, c2 = 0;
  bool ok1 = detail::spirality_side(curve, t, +1, win, r_max, d1, r1, c1);
  bool ok2 = detail::spirality_side(curve, t, -1, win, r_max, d2, r2, c2);
  require(ok1 || ok2,
          "spirality_delta: fit window lacks samples or decades of scale");
  SpiralityFit fit;
  if (ok1 && ok2) {
    double w1 = static_cast<double>(c1), w2 = static_cast<double>(c2);
    fit.delta = (w1 * d1 + w2 * d2) / (w1 + w2);
    fit.residual = std::max(r1, r2);
  } else if (ok1) {
    fit.delta = d1;
    fit.residual = r1;
  } else {
    fit.delta = d2;
    fit.residual = r2;
  }
  return fit;
}

}  // namespace sio
