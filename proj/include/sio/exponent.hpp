#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sio/curve.hpp"
#include "sio/types.hpp"

namespace sio {

/// Variable exponent p along the curve, tabulated against arclength and
/// interpolated linearly with wrap-around.
class ExponentSpec {
 public:
  ExponentSpec(std::vector<double> arclength, std::vector<double> p,
               double period, double declared_A = 0.0)
      : s_(std::move(arclength)), p_(std::move(p)), period_(period),
        declared_A_(declared_A) {
    require(s_.size() == p_.size() && !s_.empty(), "ExponentSpec: bad table");
    require(period_ > 0.0, "ExponentSpec: period must be positive");
    for (std::size_t i = 1; i < s_.size(); ++i)
      require(s_[i] > s_[i - 1], "ExponentSpec: arclength must increase");
    for (double v : p_)
      require(v > 1.0 && std::isfinite(v),
              "ExponentSpec: exponent must lie in (1, infinity)");
  }

  static ExponentSpec constant(double p, double period = kTwoPi) {
    return ExponentSpec({0.0}, {p}, period);
  }

  double declared_A() const { return declared_A_; }
  void set_declared_A(double A) { declared_A_ = A; }

  double at(double s) const {
    if (p_.size() == 1) return p_[0];
    double u = s - period_ * std::floor(s / period_);
    auto it = std::upper_bound(s_.begin(), s_.end(), u);
    if (it == s_.begin() || it == s_.end()) {
      // between the last and first table entry, across the wrap
      double s_lo = s_.back(), s_hi = s_.front() + period_;
      double uu = (u < s_.front()) ? u + period_ : u;
      double t = (uu - s_lo) / (s_hi - s_lo);
      return p_.back() + t * (p_.front() - p_.back());
    }
    std::size_t hi = static_cast<std::size_t>(it - s_.begin());
    std::size_t lo = hi - 1;
    double t = (u - s_[lo]) / (s_[hi] - s_[lo]);
    return p_[lo] + t * (p_[hi] - p_[lo]);
  }

  double min_p() const { return *std::min_element(p_.begin(), p_.end()); }
  double max_p() const { return *std::max_element(p_.begin(), p_.end()); }

 private:
  std::vector<double> s_, p_;
  double period_;
  double declared_A_ = 0.0;
};

/// q = p / (p - 1).
inline double conjugate_exponent(double p) {
  require(p > 1.0, "conjugate_exponent: p must exceed 1");
  return p / (p - 1.0);
}

struct LogHolderReport {
  bool holds = false;
  double min_A_estimate = 0.0;  // max over pairs of |p(tau)-p(t)| * (-log|tau-t|)
  bool diverging = false;       // estimate still growing at the finest scales
};

/// Brute-force check of the log-Hoelder (Dini-Lipschitz) modulus bound over
/// sampled pairs with |tau - t| <= 1/2. Divergence is detected from the
/// growth of per-scale shell maxima.
inline LogHolderReport validate_exponent(const ExponentSpec& exponent,
                                         const CurveSpec& curve,
                                         int pair_grid = 1000) {
  require(curve.size() >= 4, "validate_exponent: empty sample set");
  std::size_t stride =
      std::max<std::size_t>(1, curve.size() / static_cast<std::size_t>(pair_grid));
  std::vector<Complex> pts;
  std::vector<double> ps;
  for (std::size_t i = 0; i + 1 < curve.size(); i += stride) {
    pts.push_back(curve.points()[i]);
    ps.push_back(exponent.at(curve.arclengths()[i]));
  }
  // adjacent full-resolution pairs sharpen the small-separation shells
  struct PairVal {
    double dist, prod;
  };
  std::vector<PairVal> vals;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double d = std::abs(pts[i] - pts[j]);
      if (d <= 0.0 || d > 0.5) continue;
      vals.push_back({d, std::abs(ps[i] - ps[j]) * (-std::log(d))});
    }
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    double d = std::abs(curve.points()[i + 1] - curve.points()[i]);
    if (d <= 0.0 || d > 0.5) continue;
    double dp = std::abs(exponent.at(curve.arclengths()[i + 1]) -
                         exponent.at(curve.arclengths()[i]));
    vals.push_back({d, dp * (-std::log(d))});
  }
  LogHolderReport rep;
  if (vals.empty()) return rep;
  double d_min = 1e300;
  for (const auto& v : vals) {
    rep.min_A_estimate = std::max(rep.min_A_estimate, v.prod);
    d_min = std::min(d_min, v.dist);
  }
  // shell maxima m_k over |tau-t| in (0.5*2^{-k-1}, 0.5*2^{-k}]
  int k_max = std::max(
      1, static_cast<int>(std::floor(std::log2(0.5 / d_min))));
  std::vector<double> shell(static_cast<std::size_t>(k_max + 1), 0.0);
  for (const auto& v : vals) {
    int k = static_cast<int>(std::floor(std::log2(0.5 / v.dist)));
    k = std::clamp(k, 0, k_max);
    shell[static_cast<std::size_t>(k)] =
        std::max(shell[static_cast<std::size_t>(k)], v.prod);
  }
  // trailing-slope fit of m_k against k; a jump in p makes this grow like k
  int fit_lo = k_max / 2;
  if (k_max - fit_lo >= 2) {
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int k = fit_lo; k <= k_max; ++k) {
      double x = static_cast<double>(k), y = shell[static_cast<std::size_t>(k)];
      n += 1.0;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.diverging = slope > 0.05;
  }
  rep.holds = !rep.diverging &&
              (exponent.declared_A() <= 0.0 ||
               rep.min_A_estimate <= exponent.declared_A() + 1e-12);
  return rep;
}

}  // namespace sio
