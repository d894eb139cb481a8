#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sio/fredholm.hpp"
#include "sio/horn.hpp"
#include "sio/operator_expr.hpp"
#include "sio/pc_symbol.hpp"
#include "sio/problem.hpp"
#include "sio/types.hpp"

namespace sio {

/// sigma_{t,z} of a generator leaf: exact template evaluation with the
/// principal branch of sqrt(z(1-z)).
inline MatrixXc sigma_generator(const OperatorExpr& gen, Complex t, Complex z,
                                const ProblemInstance& problem) {
  int n = gen.dimension();
  MatrixXc out = MatrixXc::Zero(2 * n, 2 * n);
  switch (gen.kind()) {
    case OperatorExpr::Kind::S:
      out.topLeftCorner(n, n).setIdentity();
      out.bottomRightCorner(n, n) = -MatrixXc::Identity(n, n);
      return out;
    case OperatorExpr::Kind::Identity:
      return MatrixXc::Identity(2 * n, 2 * n);
    case OperatorExpr::Kind::Scalar:
      return gen.scalar_value() * MatrixXc::Identity(2 * n, 2 * n);
    case OperatorExpr::Kind::CompactZero:
      return out;
    case OperatorExpr::Kind::Coef: {
      const PcSymbol& a = *gen.coef_symbol();
      auto [left, right] = a.limits(t, problem.curve().arclength_of(t),
                                    problem.point_tolerance());
      Complex root = std::sqrt(z * (1.0 - z));
      out.topLeftCorner(n, n) = right * z + left * (1.0 - z);
      out.topRightCorner(n, n) = (right - left) * root;
      out.bottomLeftCorner(n, n) = (right - left) * root;
      out.bottomRightCorner(n, n) = right * (1.0 - z) + left * z;
      return out;
    }
    default:
      require(false, "sigma_generator: not a generator leaf");
      return out;
  }
}

/// sigma_{t,z} of an expression: sums map to matrix sums, products to ordered
/// matrix products.
inline MatrixXc sigma_eval(const OperatorExpr& expr, Complex t, Complex z,
                           const ProblemInstance& problem) {
  switch (expr.kind()) {
    case OperatorExpr::Kind::Sum: {
      MatrixXc acc = sigma_eval(expr.children()[0], t, z, problem);
      for (std::size_t i = 1; i < expr.children().size(); ++i)
        acc += sigma_eval(expr.children()[i], t, z, problem);
      return acc;
    }
    case OperatorExpr::Kind::Product: {
      MatrixXc acc = sigma_eval(expr.children()[0], t, z, problem);
      for (std::size_t i = 1; i < expr.children().size(); ++i)
        acc = acc * sigma_eval(expr.children()[i], t, z, problem);
      return acc;
    }
    default:
      return sigma_generator(expr, t, z, problem);
  }
}

struct BundleOptions {
  int c_grid = 64;       // c-values per horn
  int s_count = 257;     // samples per boundary spiral
  double s_min = -8.0;
  double s_max = 8.0;
  int t_grid = 256;      // continuous test points along the curve
};

struct HornBundle {
  struct Entry {
    Complex t;
    SpiralicHorn horn;
    std::vector<Complex> z_samples;
    bool full = false;  // jump point or weight node: full horn sampling
  };
  std::vector<Entry> entries;
};

/// Test-point set for the determinant criterion: all coefficient jump points
/// and weight nodes carry full horn sampling (plus z = 0, 1); a uniform grid
/// of continuous points carries the single sample z = 0, where sigma is
/// z-independent.
inline HornBundle horn_bundle(const OperatorExpr& expr,
                              const ProblemInstance& problem,
                              const BundleOptions& opt = {}) {
  HornBundle bundle;
  std::vector<const PcSymbol*> coefs;
  expr.collect_coefs(coefs);
  auto already = [&](Complex t) {
    for (const auto& e : bundle.entries)
      if (std::abs(e.t - t) <= problem.point_tolerance()) return true;
    return false;
  };
  auto add_full = [&](Complex t) {
    if (already(t)) return;
    SpiralicHorn h = local_spectrum(problem, t);
    std::vector<Complex> zs;
    int nc = (h.a == h.b) ? 1 : opt.c_grid;
    for (int j = 0; j < nc; ++j) {
      double c = (nc == 1) ? h.a
                           : h.a + (h.b - h.a) * static_cast<double>(j) /
                                       static_cast<double>(nc - 1);
      BoundaryCurve bc =
          boundary_curve(h, c, opt.s_min, opt.s_max, opt.s_count);
      zs.insert(zs.end(), bc.points.begin(), bc.points.end());
    }
    zs.push_back(Complex(0.0));
    zs.push_back(Complex(1.0));
    bundle.entries.push_back({t, h, std::move(zs), true});
  };
  for (const PcSymbol* a : coefs)
    for (const auto& j : a->jumps()) add_full(j.point);
  for (const auto& node : problem.weight().nodes) add_full(node.point);
  const auto& curve = problem.curve();
  std::size_t stride = std::max<std::size_t>(
      1, curve.size() / static_cast<std::size_t>(opt.t_grid));
  for (std::size_t i = 0; i + 1 < curve.size(); i += stride) {
    Complex t = curve.points()[i];
    if (already(t)) continue;
    bundle.entries.push_back(
        {t, local_spectrum(problem, t), {Complex(0.0)}, false});
  }
  return bundle;
}

struct AlgebraReport {
  bool fredholm = false;
  double min_abs_det = 0.0;
  std::optional<std::pair<Complex, Complex>> witness;  // argmin (t, z)
  bool near_zero = false;        // min_abs_det below the warning threshold
  bool exact_criterion = false;  // aP + Q form decided by the interval test
  bool semifredholm_equals_fredholm = true;
};

/// Determinant-based Fredholm decision over the sampled horn bundle. The
/// canonical scalar aP + Q form is decided by the exact interval criterion;
/// general expressions are decided by sampling, with min |det| and the argmin
/// witness reported so callers can refine.
inline AlgebraReport fredholm_algebra(const OperatorExpr& expr,
                                      const ProblemInstance& problem,
                                      const BundleOptions& opt = {},
                                      double near_zero_threshold = 1e-9) {
  require(check_boundedness(problem).bounded,
          "fredholm_algebra: instance fails the boundedness condition");
  AlgebraReport rep;
  HornBundle bundle = horn_bundle(expr, problem, opt);
  double min_det = 1e300;
  for (const auto& e : bundle.entries) {
    for (Complex z : e.z_samples) {
      double d = std::abs(sigma_eval(expr, e.t, z, problem).determinant());
      if (d < min_det) {
        min_det = d;
        rep.witness = std::make_pair(e.t, z);
      }
    }
  }
  rep.min_abs_det = min_det;
  rep.near_zero = min_det < near_zero_threshold;
  if (auto a = expr.match_a_P_plus_Q(); a && a->dimension() == 1) {
    rep.exact_criterion = true;
    FredholmReport fr = fredholm_sio(*a, problem);
    rep.fredholm = fr.fredholm;
  } else {
    rep.fredholm = min_det > 0.0;
  }
  if (rep.fredholm) rep.witness.reset();
  return rep;
}

}  // namespace sio
