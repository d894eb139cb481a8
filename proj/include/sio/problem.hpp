#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "sio/curve.hpp"
#include "sio/exponent.hpp"
#include "sio/submult.hpp"
#include "sio/types.hpp"
#include "sio/weight.hpp"

namespace sio {

struct PowerlikenessOptions {
  int K = 20;
  double R_max_frac = 0.1;   // top of the R grid, relative to d_t
  double R_min = 1e-6;       // bottom of the R grid (absolute)
  int R_per_decade = 16;
  double conv_rel_tol = 1e-3;
  std::size_t min_portion_segments = 4;
};

namespace detail {

/// Per-point radial view of log w: segments sorted by distance from t with
/// prefix sums, so portion log-means cost a binary search.
class RadialLogMean {
 public:
  RadialLogMean(const CurveSpec& curve, const RadialWeightSpec& weight,
                Complex t) {
    struct Item {
      double d, len, lw;
    };
    std::vector<Item> items;
    items.reserve(curve.segment_count());
    for (std::size_t i = 0; i < curve.segment_count(); ++i) {
      Complex mid = 0.5 * (curve.segment_a(i) + curve.segment_b(i));
      double d = std::abs(mid - t);
      if (d <= 0.0) continue;
      items.push_back({d, curve.segment_length(i), weight.log_weight(mid)});
    }
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.d < b.d; });
    d_.reserve(items.size());
    len_prefix_.reserve(items.size());
    lwl_prefix_.reserve(items.size());
    double lsum = 0.0, wsum = 0.0;
    for (const auto& it : items) {
      lsum += it.len;
      wsum += it.len * it.lw;
      d_.push_back(it.d);
      len_prefix_.push_back(lsum);
      lwl_prefix_.push_back(wsum);
    }
  }

  /// Largest sampled distance from t; portions beyond it are saturated.
  double max_radius() const { return d_.empty() ? 0.0 : d_.back(); }

  /// Mean of log w over Gamma(t,R); count receives the segment count.
  std::optional<double> mean(double R, std::size_t min_segments) const {
    auto it = std::upper_bound(d_.begin(), d_.end(), R);
    std::size_t k = static_cast<std::size_t>(it - d_.begin());
    if (k < min_segments) return std::nullopt;
    return lwl_prefix_[k - 1] / len_prefix_[k - 1];
  }

 private:
  std::vector<double> d_, len_prefix_, lwl_prefix_;
};

}  // namespace detail

/// Indices of powerlikeness of the weight at t: index pair of
/// V_t^0 w (x) = limsup_{R->0} H_{w,t}(xR, R), with H built from logarithmic
/// means of log w over shrinking portions.
inline IndexPair powerlikeness_indices(const CurveSpec& curve,
                                       const RadialWeightSpec& weight,
                                       Complex t,
                                       const PowerlikenessOptions& opt = {}) {
  detail::RadialLogMean radial(curve, weight, t);
  const double d_t = curve.max_distance(t);
  const double R_hi = opt.R_max_frac * d_t;
  require(R_hi > opt.R_min, "powerlikeness_indices: degenerate R grid");
  const int nR = std::max(
      4, static_cast<int>(std::log10(R_hi / opt.R_min) *
                          static_cast<double>(opt.R_per_decade)));
  const double ln2 = std::log(2.0);
  auto log_V = [&](int k) {
    const double lx = static_cast<double>(k) * ln2;
    // tail sup of log H(xR, R) over descending R, stabilized like a limsup
    double best = -1e300, tail = -1e300;
    bool any = false;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < nR; ++i) {
      double R = R_hi * std::pow(opt.R_min / R_hi,
                                 static_cast<double>(i) /
                                     static_cast<double>(nR - 1));
      double R1 = R * std::exp(lx);
      // H(xR, R) needs both radii inside the sampled range: below the
      // largest sampled distance (no saturation to the global mean) and
      // above the resolution floor (enough segments for a mean)
      if (R1 > radial.max_radius() || R > radial.max_radius()) continue;
      auto m1 = radial.mean(R1, opt.min_portion_segments);
      auto m0 = radial.mean(R, opt.min_portion_segments);
      if (!m1 || !m0) continue;
      double h = *m1 - *m0;
      tail = std::max(tail, h);
      (void)prev;
      (void)have_prev;
      best = tail;
      any = true;
    }
    require(any, "powerlikeness_indices: portion with no samples");
    return best;
  };
  // tail sup over the full descending grid approximates the limsup; the
  // endpoint slopes give the index pair
  double lower = log_V(-opt.K) / (-static_cast<double>(opt.K) * ln2);
  double upper = log_V(opt.K) / (static_cast<double>(opt.K) * ln2);
  return IndexPair{lower, upper};
}

/// Geometric/analytic problem data with the derived per-point cache
/// (1/p(t), delta(t), mu_t, nu_t).
class ProblemInstance {
 public:
  ProblemInstance(CurveSpec curve, ExponentSpec exponent,
                  RadialWeightSpec weight)
      : curve_(std::move(curve)), exponent_(std::move(exponent)),
        weight_(std::move(weight)) {}

  const CurveSpec& curve() const { return curve_; }
  const ExponentSpec& exponent() const { return exponent_; }
  const RadialWeightSpec& weight() const { return weight_; }

  double p_at(Complex t) const { return exponent_.at(curve_.arclength_of(t)); }

  /// delta(t): declared whirl data when present, else 0 for curves without
  /// declared whirl points (piecewise smooth default); the cache can hold
  /// estimated values.
  double delta_at(Complex t) const {
    if (auto it = find_cache(delta_cache_, t)) return it->second;
    if (const WhirlPoint* wp = curve_.declared_whirl(t)) return wp->delta;
    return 0.0;
  }
  void cache_delta(Complex t, double delta) {
    delta_cache_.emplace_back(t, delta);
  }

  /// (mu_t, nu_t): MO indices of the node profile at weight nodes, (0,0)
  /// elsewhere. Computed values are cached; tests may pre-seed the cache.
  IndexPair point_indices(Complex t) const {
    if (auto it = find_cache(index_cache_, t)) return it->second;
    const WeightNode* node = weight_.find(t, point_tol_);
    if (!node) return IndexPair{0.0, 0.0};
    MoReport rep = mo_indices(node->profile);
    require(rep.converged, "point_indices: node profile indices did not converge");
    index_cache_.emplace_back(t, rep.indices);
    return rep.indices;
  }
  void cache_point_indices(Complex t, IndexPair pair) {
    index_cache_.emplace_back(t, pair);
  }

  double point_tolerance() const { return point_tol_; }

 private:
  template <typename V>
  static const std::pair<Complex, V>* find_cache(
      const std::vector<std::pair<Complex, V>>& cache, Complex t) {
    for (const auto& e : cache)
      if (std::abs(e.first - t) <= 1e-9) return &e;
    return nullptr;
  }

  CurveSpec curve_;
  ExponentSpec exponent_;
  RadialWeightSpec weight_;
  double point_tol_ = 1e-9;
  mutable std::vector<std::pair<Complex, IndexPair>> index_cache_;
  std::vector<std::pair<Complex, double>> delta_cache_;
};

inline IndexPair powerlikeness_indices(const ProblemInstance& problem, Complex t,
                                       const PowerlikenessOptions& opt = {}) {
  return powerlikeness_indices(problem.curve(), problem.weight(), t, opt);
}

}  // namespace sio
