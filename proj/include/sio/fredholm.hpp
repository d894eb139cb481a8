#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sio/horn.hpp"
#include "sio/pc_symbol.hpp"
#include "sio/problem.hpp"
#include "sio/types.hpp"

namespace sio {

struct BoundednessReport {
  bool bounded = false;
  struct NodeSlack {
    Complex point;
    double slack = 0.0;  // min(1/p + m, 1 - 1/p - M)
  };
  std::vector<NodeSlack> slacks;
};

/// 0 < 1/p(t_k) + m(w_k) and 1/p(t_k) + M(w_k) < 1 at every weight node.
inline BoundednessReport check_boundedness(const ProblemInstance& problem) {
  BoundednessReport rep;
  rep.bounded = true;
  for (const auto& node : problem.weight().nodes) {
    IndexPair mm = problem.point_indices(node.point);
    double inv_p = 1.0 / problem.p_at(node.point);
    double slack = std::min(inv_p + mm.lower, 1.0 - inv_p - mm.upper);
    rep.slacks.push_back({node.point, slack});
    if (!(slack > 0.0)) rep.bounded = false;
  }
  return rep;
}

/// Indicator functions alpha_t(x) = alpha(V_t^0 w) + delta(t) x and the
/// matching beta_t(x); the indices of powerlikeness at nodes equal the MO
/// indices of the node profile.
inline IndexPair indicator_functions(const ProblemInstance& problem, Complex t,
                                     double x) {
  IndexPair mm = problem.point_indices(t);
  double d = problem.delta_at(t);
  return IndexPair{mm.lower + d * x, mm.upper + d * x};
}

struct IntervalIntegerTest {
  bool hits_integer = false;
  double margin = 0.0;          // distance of [lo, hi] to the integers
  double nearest_integer = 0.0;
  std::optional<long> shift;    // s with s + [lo, hi] inside (0, 1)
};

/// Exact test of [lo, hi] against the integers, with the distance margin and
/// the shift integer placing the interval into (0, 1) when one exists.
inline IntervalIntegerTest interval_vs_integers(double lo, double hi) {
  require(lo <= hi, "interval_vs_integers: need lo <= hi");
  IntervalIntegerTest out;
  double k_lo = std::floor(lo);   // last integer <= lo (equality means a hit)
  double k_hi = std::ceil(hi);    // first integer >= hi
  if (std::ceil(lo) <= std::floor(hi) || lo == k_lo || hi == k_hi) {
    // some integer lies in [lo, hi]
    out.hits_integer = true;
    out.margin = 0.0;
    out.nearest_integer = (std::ceil(lo) <= std::floor(hi)) ? std::ceil(lo)
                          : (lo == k_lo ? k_lo : k_hi);
    return out;
  }
  double below = lo - k_lo, above = k_hi - hi;
  out.margin = std::min(below, above);
  out.nearest_integer = (below <= above) ? k_lo : k_hi;
  if (hi - lo < 1.0) out.shift = static_cast<long>(-k_lo);  // s + lo, s + hi in (0,1)
  return out;
}

struct FredholmReport {
  bool fredholm = false;
  struct Failure {
    Complex point;
    double lo = 0.0, hi = 0.0;  // offending interval [E + mu, E + nu]
    double nearest_integer = 0.0;
  };
  std::vector<Failure> failures;
  struct JumpMargin {
    Complex point;
    double margin = 0.0;
    std::optional<long> shift;  // the integer s_t of the sufficiency argument
  };
  std::vector<JumpMargin> margins;
  std::optional<Complex> degenerate_zero_limit;  // t with a(t-0) = 0 or a(t+0) = 0
};

namespace detail {

/// E(t) = -(1/2pi) arg r + (delta(t)/2pi) log|r| + 1/p(t) with
/// r = a(t-0)/a(t+0); the all-theta condition on 1/p + theta mu + (1-theta) nu
/// reduces to [E + mu, E + nu] missing the integers.
inline double fredholm_base_value(const ProblemInstance& problem, Complex t,
                                  Complex left, Complex right) {
  Complex r = left / right;
  double delta = problem.delta_at(t);
  return -std::arg(r) / kTwoPi + delta * std::log(std::abs(r)) / kTwoPi +
         1.0 / problem.p_at(t);
}

}  // namespace detail

/// Fredholm criterion for aP + Q with scalar piecewise continuous a.
inline FredholmReport fredholm_sio(const PcSymbol& a,
                                   const ProblemInstance& problem) {
  require(a.dimension() == 1, "fredholm_sio: scalar symbols only");
  require(check_boundedness(problem).bounded,
          "fredholm_sio: instance fails the boundedness condition");
  FredholmReport rep;
  rep.fredholm = true;
  // points needing a check: declared jumps plus weight nodes (where mu < nu
  // widens the interval even for continuous a)
  std::vector<Complex> points;
  for (const auto& j : a.jumps()) points.push_back(j.point);
  for (const auto& node : problem.weight().nodes)
    if (!a.jump_at(node.point)) points.push_back(node.point);
  for (Complex t : points) {
    auto [left, right] =
        a.limits(t, problem.curve().arclength_of(t), problem.point_tolerance());
    Complex l = left(0, 0), r = right(0, 0);
    if (l == Complex(0.0) || r == Complex(0.0)) {
      rep.degenerate_zero_limit = t;
      rep.fredholm = false;
      continue;
    }
    double E = detail::fredholm_base_value(problem, t, l, r);
    IndexPair mm = problem.point_indices(t);
    IntervalIntegerTest test =
        interval_vs_integers(E + mm.lower, E + mm.upper);
    if (test.hits_integer) {
      rep.fredholm = false;
      rep.failures.push_back(
          {t, E + mm.lower, E + mm.upper, test.nearest_integer});
    }
    rep.margins.push_back({t, test.margin, test.shift});
  }
  return rep;
}

/// Image of aP + Q is closed iff the Fredholm criterion holds; a zero
/// one-sided limit violates the hypothesis of the statement and is an error.
inline bool closed_image(const PcSymbol& a, const ProblemInstance& problem) {
  require(a.dimension() == 1, "closed_image: scalar symbols only");
  for (const auto& j : a.jumps())
    require(j.left(0, 0) != Complex(0.0) && j.right(0, 0) != Complex(0.0),
            "closed_image: zero one-sided limit violates the hypothesis");
  FredholmReport rep = fredholm_sio(a, problem);
  require(!rep.degenerate_zero_limit,
          "closed_image: zero one-sided limit violates the hypothesis");
  return rep.fredholm;
}

/// Local spectrum of P at t: S(0, 1; delta(t); 1/p(t) + mu_t, 1/p(t) + nu_t).
inline SpiralicHorn local_spectrum(const ProblemInstance& problem, Complex t) {
  IndexPair mm = problem.point_indices(t);
  double inv_p = 1.0 / problem.p_at(t);
  double a = inv_p + mm.lower, b = inv_p + mm.upper;
  require(a > 0.0 && b < 1.0,
          "local_spectrum: horn parameters escape (0,1) (unbounded instance)");
  return SpiralicHorn(Complex(0.0), Complex(1.0), problem.delta_at(t), a, b);
}

struct EssentialSpectrum {
  std::vector<Complex> range_points;  // essential range samples of a
  struct JumpHorn {
    Complex point;
    SpiralicHorn horn;
  };
  std::vector<JumpHorn> horns;

  bool contains(Complex lambda, double range_tol = 0.0) const {
    for (const auto& h : horns)
      if (membership(h.horn, lambda)) return true;
    for (Complex v : range_points)
      if (std::abs(v - lambda) <= range_tol) return true;
    return false;
  }
};

/// Analytic essential spectrum of aP + Q via the jump horns
/// S(a(t-0), a(t+0); delta(t); 1/p(t)+mu_t, 1/p(t)+nu_t) plus the symbol
/// range (lambda in the range makes a - lambda vanish on one side).
inline EssentialSpectrum essential_spectrum(const PcSymbol& a,
                                            const ProblemInstance& problem) {
  require(a.dimension() == 1, "essential_spectrum: scalar symbols only");
  require(check_boundedness(problem).bounded,
          "essential_spectrum: instance fails the boundedness condition");
  EssentialSpectrum out;
  for (const auto& bs : a.background()) out.range_points.push_back(bs.value(0, 0));
  for (const auto& j : a.jumps()) {
    out.range_points.push_back(j.left(0, 0));
    out.range_points.push_back(j.right(0, 0));
  }
  std::vector<Complex> points;
  for (const auto& j : a.jumps()) points.push_back(j.point);
  for (const auto& node : problem.weight().nodes)
    if (!a.jump_at(node.point)) points.push_back(node.point);
  for (Complex t : points) {
    auto [left, right] =
        a.limits(t, problem.curve().arclength_of(t), problem.point_tolerance());
    IndexPair mm = problem.point_indices(t);
    double inv_p = 1.0 / problem.p_at(t);
    out.horns.push_back(
        {t, SpiralicHorn(left(0, 0), right(0, 0), problem.delta_at(t),
                         inv_p + mm.lower, inv_p + mm.upper)});
  }
  return out;
}

struct SpectrumGridPoint {
  Complex lambda;
  bool in_spectrum = false;
};

/// Grid mode: lambda is in the essential spectrum iff a - lambda fails the
/// Fredholm criterion (a one-sided limit hits lambda, or the shifted jump
/// interval meets the integers).
inline std::vector<SpectrumGridPoint> essential_spectrum_grid(
    const PcSymbol& a, const ProblemInstance& problem,
    const std::vector<Complex>& lambda_grid) {
  require(a.dimension() == 1, "essential_spectrum_grid: scalar symbols only");
  std::vector<SpectrumGridPoint> out;
  out.reserve(lambda_grid.size());
  for (Complex lambda : lambda_grid) {
    std::vector<PcSymbol::BackgroundSample> bg;
    for (const auto& bs : a.background()) {
      MatrixXc v = bs.value;
      v(0, 0) -= lambda;
      bg.push_back({bs.s, v});
    }
    std::vector<PcSymbol::Jump> jumps;
    for (const auto& j : a.jumps()) {
      MatrixXc l = j.left, r = j.right;
      l(0, 0) -= lambda;
      r(0, 0) -= lambda;
      jumps.push_back({j.point, l, r});
    }
    PcSymbol shifted(1, std::move(bg), std::move(jumps));
    bool in_spec = false;
    for (const auto& bs : shifted.background())
      if (bs.value(0, 0) == Complex(0.0)) in_spec = true;
    if (!in_spec) in_spec = !fredholm_sio(shifted, problem).fredholm;
    out.push_back({lambda, in_spec});
  }
  return out;
}

/// Luxemburg norm of f on the discretized weighted space:
/// inf{ l > 0 : sum_i m_i |f_i w_i / l|^{p_i} <= 1 }.
inline double luxemburg_norm(const std::vector<Complex>& f_samples,
                             const std::vector<double>& weight_samples,
                             const std::vector<double>& exponent_samples,
                             const std::vector<double>& measure_weights,
                             double rel_tol = 1e-10) {
  std::size_t n = f_samples.size();
  require(weight_samples.size() == n && exponent_samples.size() == n &&
              measure_weights.size() == n && n > 0,
          "luxemburg_norm: sample arrays must share a positive length");
  std::vector<double> g(n);
  double g_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    require(exponent_samples[i] > 1.0, "luxemburg_norm: exponent must exceed 1");
    require(measure_weights[i] >= 0.0, "luxemburg_norm: negative measure weight");
    g[i] = std::abs(f_samples[i]) * weight_samples[i];
    g_max = std::max(g_max, g[i]);
  }
  if (g_max == 0.0) return 0.0;
  auto modular = [&](double l) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] > 0.0) m += measure_weights[i] * std::pow(g[i] / l, exponent_samples[i]);
    return m;
  };
  // the modular is strictly decreasing in l; bracket the unit crossing
  double lo = g_max * 1e-8, hi = g_max;
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    require(hi < 1e300, "luxemburg_norm: modular infinite for all tested lambda");
  }
  while (modular(lo) < 1.0 && lo > hi * 1e-300) lo *= 0.5;
  if (modular(lo) < 1.0) return lo;
  for (int it = 0; it < 200 && (hi - lo) > rel_tol * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (modular(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct ApEstimate {
  double sup_estimate = 0.0;
  bool diverging = false;
};

namespace detail {

/// Per-segment data reused across (t, R) pairs of the A_{p(.)} sweep.
struct ApSamples {
  std::vector<Complex> mid;
  std::vector<double> len, lw, p, q;

  explicit ApSamples(const ProblemInstance& problem) {
    const CurveSpec& curve = problem.curve();
    std::size_t m = curve.segment_count();
    mid.resize(m);
    len.resize(m);
    lw.resize(m);
    p.resize(m);
    q.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      mid[i] = 0.5 * (curve.segment_a(i) + curve.segment_b(i));
      len[i] = curve.segment_length(i);
      lw[i] = problem.weight().log_weight(mid[i]);
      double s = 0.5 * (curve.arclengths()[i] + curve.arclengths()[i + 1]);
      p[i] = problem.exponent().at(s);
      q[i] = conjugate_exponent(p[i]);
    }
  }

  /// (1/R) ||w chi||_p ||w^{-1} chi||_q over the portion, counting only
  /// samples with |mid - t| in [cutoff, R); 0 when the portion is too thin.
  double quotient(Complex t, double R, double cutoff = 0.0) const {
    std::vector<Complex> ones;
    std::vector<double> ws, iws, ps, qs, mw;
    for (std::size_t i = 0; i < mid.size(); ++i) {
      double d = std::abs(mid[i] - t);
      if (d >= R || d < cutoff) continue;
      if (lw[i] <= -1e200) continue;  // node sample where w vanishes
      ones.push_back(Complex(1.0));
      ws.push_back(std::exp(lw[i]));
      iws.push_back(std::exp(-lw[i]));
      ps.push_back(p[i]);
      qs.push_back(q[i]);
      mw.push_back(len[i]);
    }
    if (ones.size() < 4) return 0.0;
    return luxemburg_norm(ones, ws, ps, mw) *
           luxemburg_norm(ones, iws, qs, mw) / R;
  }
};

}  // namespace detail

/// Grid supremum of the A_{p(.)} quotient. Divergence is probed at the
/// weight nodes by shrinking the inner sampling cutoff at fixed R: a quotient
/// still climbing multiplicatively at the finest resolved cutoff marks a
/// divergent (non-Muckenhoupt) weight.
inline ApEstimate ap_condition_estimate(const ProblemInstance& problem,
                                        int t_count = 16, int R_count = 16) {
  const CurveSpec& curve = problem.curve();
  detail::ApSamples samples(problem);
  ApEstimate out;
  std::size_t stride =
      std::max<std::size_t>(1, curve.size() / static_cast<std::size_t>(t_count));
  std::vector<Complex> ts;
  for (std::size_t i = 0; i < curve.size(); i += stride)
    ts.push_back(curve.points()[i]);
  for (const auto& node : problem.weight().nodes) ts.push_back(node.point);

  double R_lo = std::max(8.0 * curve.max_segment_length(),
                         1e-4 * curve.diameter_estimate());
  for (Complex t : ts) {
    double R_hi = curve.max_distance(t);
    if (R_hi <= R_lo) continue;
    for (int r = 0; r < R_count; ++r) {
      double R = R_hi * std::pow(R_lo / R_hi,
                                 static_cast<double>(r) /
                                     static_cast<double>(R_count - 1));
      out.sup_estimate = std::max(out.sup_estimate, samples.quotient(t, R));
    }
  }

  for (const auto& node : problem.weight().nodes) {
    Complex t = node.point;
    double R = 0.25 * curve.max_distance(t);
    double d_min = 1e300;
    for (const Complex& mid : samples.mid)
      d_min = std::min(d_min, std::abs(mid - t));
    std::vector<double> q;
    for (double cutoff = R * 0.25; cutoff >= 2.0 * d_min; cutoff *= 0.25) {
      double v = samples.quotient(t, R, cutoff);
      if (v > 0.0) q.push_back(v);
    }
    if (q.size() >= 4 && q[q.size() - 1] > 1.05 * q[q.size() - 2] &&
        q[q.size() - 2] > 1.05 * q[q.size() - 3])
      out.diverging = true;
  }
  return out;
}

}  // namespace sio
