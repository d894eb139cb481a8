#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "sio/types.hpp"

namespace sio {

using MatrixXc = Eigen::MatrixXcd;

/// Piecewise continuous N x N matrix coefficient: continuous background
/// samples along arclength plus a finite list of jumps with one-sided limits.
class PcSymbol {
 public:
  struct BackgroundSample {
    double s = 0.0;
    MatrixXc value;
  };
  struct Jump {
    Complex point;
    MatrixXc left;   // a(t-0)
    MatrixXc right;  // a(t+0)
  };

  PcSymbol(int dimension, std::vector<BackgroundSample> background,
           std::vector<Jump> jumps = {})
      : n_(dimension), background_(std::move(background)),
        jumps_(std::move(jumps)) {
    require(n_ >= 1, "PcSymbol: dimension must be >= 1");
    require(!background_.empty(), "PcSymbol: background samples required");
    std::sort(background_.begin(), background_.end(),
              [](const BackgroundSample& a, const BackgroundSample& b) {
                return a.s < b.s;
              });
    for (const auto& bs : background_)
      require(bs.value.rows() == n_ && bs.value.cols() == n_,
              "PcSymbol: background dimension mismatch");
    for (const auto& j : jumps_)
      require(j.left.rows() == n_ && j.left.cols() == n_ &&
                  j.right.rows() == n_ && j.right.cols() == n_,
              "PcSymbol: jump dimension mismatch");
  }

  static PcSymbol constant(Complex c) {
    MatrixXc m(1, 1);
    m(0, 0) = c;
    return PcSymbol(1, {{0.0, m}});
  }

  /// Scalar symbol on the unit circle with one jump at the given point:
  /// value `left` just before it (in orientation), `right` just after.
  static PcSymbol scalar_jump(Complex point, Complex left, Complex right) {
    MatrixXc l(1, 1), r(1, 1);
    l(0, 0) = left;
    r(0, 0) = right;
    return PcSymbol(1, {{0.0, r}}, {{point, l, r}});
  }

  int dimension() const { return n_; }
  const std::vector<Jump>& jumps() const { return jumps_; }
  const std::vector<BackgroundSample>& background() const { return background_; }

  const Jump* jump_at(Complex t, double tol = 1e-9) const {
    for (const auto& j : jumps_)
      if (std::abs(j.point - t) <= tol) return &j;
    return nullptr;
  }

  /// Nearest-neighbor background lookup; background tables are expected to
  /// sample tightly around declared jumps.
  const MatrixXc& background_at(double s) const {
    auto it = std::lower_bound(
        background_.begin(), background_.end(), s,
        [](const BackgroundSample& a, double v) { return a.s < v; });
    if (it == background_.end()) return background_.back().value;
    if (it == background_.begin()) return it->value;
    auto prev = std::prev(it);
    return (s - prev->s <= it->s - s) ? prev->value : it->value;
  }

  /// One-sided limits at a point: the declared jump if present, else the
  /// (continuous) background value twice.
  std::pair<MatrixXc, MatrixXc> limits(Complex t, double s_of_t,
                                       double tol = 1e-9) const {
    if (const Jump* j = jump_at(t, tol)) return {j->left, j->right};
    const MatrixXc& v = background_at(s_of_t);
    return {v, v};
  }

  /// Deviation between declared one-sided limits and linear extrapolation of
  /// the last 8 background samples on each side of the jump arclength.
  double jump_background_deviation(const Jump& j, double s_of_jump) const {
    auto extrapolate = [&](bool below) {
      std::vector<const BackgroundSample*> win;
      if (below) {
        for (auto it = background_.rbegin(); it != background_.rend(); ++it)
          if (it->s < s_of_jump - 1e-12 && win.size() < 8) win.push_back(&*it);
      } else {
        for (const auto& bs : background_)
          if (bs.s > s_of_jump + 1e-12 && win.size() < 8) win.push_back(&bs);
      }
      MatrixXc out = MatrixXc::Zero(n_, n_);
      if (win.empty()) return out;
      if (win.size() < 3) return win.front()->value;
      double n = 0.0, sx = 0.0, sxx = 0.0;
      for (const auto* bs : win) {
        double x = bs->s - s_of_jump;
        n += 1.0;
        sx += x;
        sxx += x * x;
      }
      double det = n * sxx - sx * sx;
      MatrixXc sy = MatrixXc::Zero(n_, n_), sxy = MatrixXc::Zero(n_, n_);
      for (const auto* bs : win) {
        double x = bs->s - s_of_jump;
        sy += bs->value;
        sxy += x * bs->value;
      }
      // value at x = 0 of the per-entry least-squares line
      return MatrixXc((sxx * sy - sx * sxy) / det);
    };
    double dev = 0.0;
    dev = std::max(dev, (extrapolate(true) - j.left).cwiseAbs().maxCoeff());
    dev = std::max(dev, (extrapolate(false) - j.right).cwiseAbs().maxCoeff());
    return dev;
  }

 private:
  int n_;
  std::vector<BackgroundSample> background_;
  std::vector<Jump> jumps_;
};

/// gamma_t of the scalar local representative: Re from the jump argument
/// (defined mod 1; reduced into [0,1)), Im from the jump modulus.
inline Complex jump_exponent(const PcSymbol& a, Complex t, double s_of_t,
                             double tol = 1e-9) {
  require(a.dimension() == 1, "jump_exponent: scalar symbols only");
  auto [left, right] = a.limits(t, s_of_t, tol);
  Complex l = left(0, 0), r = right(0, 0);
  require(std::abs(l) > 0.0 && std::abs(r) > 0.0,
          "jump_exponent: zero one-sided limit (operator cannot be Fredholm)");
  Complex ratio = l / r;
  double re = frac(std::arg(ratio) / kTwoPi);
  double im = -std::log(std::abs(ratio)) / kTwoPi;
  return Complex(re, im);
}

}  // namespace sio
