#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "sio/types.hpp"

namespace sio {

/// Radial weight profile rho on (0, x_max]. Either an exact power law
/// x^gamma or tabulated (x, rho(x)) samples interpolated linearly in
/// log-log scale (with end-slope extrapolation beyond the table).
class WeightProfile {
 public:
  static WeightProfile power(double gamma, double x_max = 1.0) {
    require(x_max > 0.0, "WeightProfile: x_max must be positive");
    WeightProfile p;
    p.gamma_ = gamma;
    p.x_max_ = x_max;
    return p;
  }

  /// Samples must be positive; x need not be sorted.
  static WeightProfile sampled(std::vector<std::pair<double, double>> samples) {
    require(samples.size() >= 2, "WeightProfile: need at least 2 samples");
    std::sort(samples.begin(), samples.end());
    WeightProfile p;
    p.log_x_.reserve(samples.size());
    p.log_rho_.reserve(samples.size());
    for (const auto& [x, rho] : samples) {
      require(x > 0.0, "WeightProfile: sample x must be positive");
      require(rho > 0.0, "WeightProfile: profile must be positive");
      p.log_x_.push_back(std::log(x));
      p.log_rho_.push_back(std::log(rho));
    }
    for (std::size_t i = 1; i < p.log_x_.size(); ++i)
      require(p.log_x_[i] > p.log_x_[i - 1] + 0.0,
              "WeightProfile: duplicate sample abscissae");
    p.x_max_ = samples.back().first;
    return p;
  }

  bool is_power() const { return log_x_.empty(); }
  double power_exponent() const {
    require(is_power(), "WeightProfile: not a power law");
    return gamma_;
  }
  double x_max() const { return x_max_; }
  double log_x_min() const {
    return is_power() ? -1e30 : log_x_.front();
  }

  /// log rho(e^{logx}).
  double log_value_log(double logx) const {
    if (is_power()) return gamma_ * logx;
    const auto& xs = log_x_;
    if (logx <= xs.front())
      return log_rho_.front() + end_slope_low() * (logx - xs.front());
    if (logx >= xs.back())
      return log_rho_.back() + end_slope_high() * (logx - xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), logx);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    double t = (logx - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return log_rho_[i - 1] + t * (log_rho_[i] - log_rho_[i - 1]);
  }

  double value(double x) const { return std::exp(log_value_log(std::log(x))); }

  /// Piecewise log-log slopes of a sampled table; {gamma} for power laws.
  std::vector<double> segment_slopes() const {
    if (is_power()) return {gamma_};
    std::vector<double> out;
    for (std::size_t i = 1; i < log_x_.size(); ++i)
      out.push_back((log_rho_[i] - log_rho_[i - 1]) /
                    (log_x_[i] - log_x_[i - 1]));
    return out;
  }

 private:
  double end_slope_low() const {
    return (log_rho_[1] - log_rho_[0]) / (log_x_[1] - log_x_[0]);
  }
  double end_slope_high() const {
    std::size_t n = log_x_.size();
    return (log_rho_[n - 1] - log_rho_[n - 2]) / (log_x_[n - 1] - log_x_[n - 2]);
  }

  double gamma_ = 0.0;
  double x_max_ = 1.0;
  std::vector<double> log_x_, log_rho_;  // ascending, sampled form only
};

struct WeightNode {
  Complex point;
  WeightProfile profile;
};

/// Radial oscillating weight w(t) = prod_k w_k(|t - t_k|).
struct RadialWeightSpec {
  std::vector<WeightNode> nodes;

  RadialWeightSpec() = default;
  explicit RadialWeightSpec(std::vector<WeightNode> n) : nodes(std::move(n)) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j)
        require(std::abs(nodes[i].point - nodes[j].point) > 1e-12,
                "RadialWeightSpec: node points must be pairwise distinct");
  }

  double log_weight(Complex tau) const {
    double lw = 0.0;
    for (const auto& node : nodes) {
      double d = std::abs(tau - node.point);
      if (d <= 0.0) return -1e300;  // weight vanishes at the node itself
      lw += node.profile.log_value_log(std::log(d));
    }
    return lw;
  }

  const WeightNode* find(Complex t, double tol = 1e-9) const {
    for (const auto& node : nodes)
      if (std::abs(node.point - t) <= tol) return &node;
    return nullptr;
  }
};

struct EnvelopeReport {
  bool in_W = false;
  double a = 0.0, b = 0.0;    // witnesses: x^a rho and x^b / rho almost increasing
  double c_a = 0.0, c_b = 0.0;  // almost-increasing constants
};

/// Scans exponent candidates for the class-W envelopes x^a rho(x) and
/// x^b / rho(x). Candidates are half-integers in [-range, range] plus the
/// profile's end slopes so exact power laws get constant 1.
inline EnvelopeReport envelope_check(const WeightProfile& rho,
                                    double range = 8.0, double c_max = 1e4) {
  // evaluation grid, geometric; sampled tables get the whole table plus a
  // stretch of the end-slope extrapolation regime
  double lo = rho.is_power() ? std::log(1e-14) : rho.log_x_min() - 20.0;
  double hi = std::log(rho.x_max());
  int n = std::max(64, static_cast<int>((hi - lo) / std::log(10.0) * 16));
  std::vector<double> u(static_cast<std::size_t>(n)), lr(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    lr[i] = rho.log_value_log(u[i]);
  }
  // almost-increasing constant of g_i = e*u_i + sign*lr_i
  auto ai_const = [&](double e, double sign) {
    double worst = 0.0, run_max = -1e300;
    for (std::size_t i = 0; i < u.size(); ++i) {
      double g = e * u[i] + sign * lr[i];
      run_max = std::max(run_max, g);
      worst = std::max(worst, run_max - g);
    }
    return std::exp(worst);
  };
  std::vector<double> candidates;
  for (double e = -range; e <= range + 1e-9; e += 0.5) candidates.push_back(e);
  for (double s : rho.segment_slopes())
    for (double e : {-s, s})
      if (std::abs(e) <= range + 1e-9) candidates.push_back(e);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](double x, double y) {
                                 return std::abs(x - y) < 1e-12;
                               }),
                   candidates.end());

  // sharpest acceptable candidate, then the smallest constant within half a
  // step of it (so exact power laws report their own slope with constant 1)
  auto pick = [&](double sign, double& e_out, double& c_out) {
    double e_min = 0.0;
    bool found = false;
    for (double e : candidates) {
      if (ai_const(e, sign) <= c_max) {
        e_min = e;
        found = true;
        break;
      }
    }
    if (!found) return false;
    e_out = e_min;
    c_out = ai_const(e_min, sign);
    for (double e : candidates) {
      if (e <= e_min || e > e_min + 0.5 + 1e-9) continue;
      double c = ai_const(e, sign);
      if (c < c_out * (1.0 - 1e-12)) {
        e_out = e;
        c_out = c;
      }
    }
    return true;
  };
  EnvelopeReport rep;
  bool got_a = pick(+1.0, rep.a, rep.c_a);
  bool got_b = pick(-1.0, rep.b, rep.c_b);
  rep.in_W = got_a && got_b;
  return rep;
}

}  // namespace sio
