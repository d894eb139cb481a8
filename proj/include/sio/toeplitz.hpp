#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "sio/pc_symbol.hpp"
#include "sio/types.hpp"

namespace sio {

/// n x n truncation T[j,k] = a_hat(j - k) of the Toeplitz operator with
/// symbol a on the unit circle.
struct ToeplitzSection {
  int n = 0;
  std::vector<Complex> coeffs;  // a_hat(m) at index m + n - 1, m = -(n-1)..n-1

  Complex coeff(int m) const { return coeffs[static_cast<std::size_t>(m + n - 1)]; }

  MatrixXc matrix() const {
    MatrixXc T(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) T(j, k) = coeff(j - k);
    return T;
  }
};

/// Samples a scalar symbol on the uniform angle grid, with the jump-midpoint
/// convention when a grid angle lands on a declared jump.
inline std::vector<Complex> sample_circle_symbol(const PcSymbol& a,
                                                 int fft_size) {
  require(a.dimension() == 1, "sample_circle_symbol: scalar symbols only");
  require(fft_size >= 8, "sample_circle_symbol: grid too small");
  std::vector<Complex> vals(static_cast<std::size_t>(fft_size));
  for (int j = 0; j < fft_size; ++j) {
    double th = kTwoPi * static_cast<double>(j) / static_cast<double>(fft_size);
    Complex u(std::cos(th), std::sin(th));
    if (const PcSymbol::Jump* jp = a.jump_at(u, 1e-12))
      vals[static_cast<std::size_t>(j)] =
          0.5 * (jp->left(0, 0) + jp->right(0, 0));
    else
      vals[static_cast<std::size_t>(j)] = a.background_at(th)(0, 0);
  }
  return vals;
}

/// Fourier coefficients via the discrete transform of the angle samples.
inline ToeplitzSection fourier_toeplitz(const PcSymbol& a, int fft_size = 8192,
                                        int n = 512) {
  require(n >= 1 && n <= fft_size / 8,
          "fourier_toeplitz: n too large relative to fft_size");
  std::vector<Complex> vals = sample_circle_symbol(a, fft_size);
  ToeplitzSection T;
  T.n = n;
  T.coeffs.resize(static_cast<std::size_t>(2 * n - 1));
  for (int m = -(n - 1); m <= n - 1; ++m) {
    Complex acc(0.0);
    double w = -kTwoPi * static_cast<double>(m) / static_cast<double>(fft_size);
    for (int j = 0; j < fft_size; ++j)
      acc += vals[static_cast<std::size_t>(j)] *
             Complex(std::cos(w * j), std::sin(w * j));
    T.coeffs[static_cast<std::size_t>(m + n - 1)] =
        acc / static_cast<double>(fft_size);
  }
  return T;
}

/// Smallest singular value: exact SVD at desk scale, inverse power iteration
/// on (M^H M)^{-1} through an LU factorization for larger sections.
inline double sigma_min(const MatrixXc& M, int svd_cutoff = 192) {
  require(M.rows() == M.cols() && M.rows() >= 1, "sigma_min: square input");
  if (M.rows() <= svd_cutoff)
    return Eigen::BDCSVD<MatrixXc>(M).singularValues().tail(1)(0);
  Eigen::PartialPivLU<MatrixXc> lu(M);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(M.rows()).normalized();
  double inv_sq = 0.0;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXcd x = lu.adjoint().solve(v);   // M^H x = v
    Eigen::VectorXcd y = lu.solve(x);             // M y = x
    double norm = y.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return 0.0;
    double next = norm;
    v = y / norm;
    if (it > 4 && std::abs(next - inv_sq) <= 1e-6 * next) {
      inv_sq = next;
      break;
    }
    inv_sq = next;
  }
  return 1.0 / std::sqrt(inv_sq);
}

struct SweepPoint {
  Complex lambda;
  double sigma_min = 0.0;
};

namespace detail {

/// QR factorization of an upper Hessenberg matrix by Givens rotations,
/// supporting O(n^2) solves with the matrix and its adjoint.
class HessenbergQr {
 public:
  explicit HessenbergQr(const MatrixXc& H_shifted) : R_(H_shifted) {
    n_ = static_cast<int>(R_.rows());
    rot_.resize(static_cast<std::size_t>(n_ - 1));
    for (int k = 0; k + 1 < n_; ++k) {
      rot_[static_cast<std::size_t>(k)].makeGivens(R_(k, k), R_(k + 1, k));
      R_.applyOnTheLeft(k, k + 1,
                        rot_[static_cast<std::size_t>(k)].adjoint());
      R_(k + 1, k) = Complex(0.0);
    }
  }

  /// x with (H - lambda) x = b: x = R^{-1} Q^H b.
  void solve(Eigen::VectorXcd& b) const {
    for (int k = 0; k + 1 < n_; ++k)
      b.applyOnTheLeft(k, k + 1, rot_[static_cast<std::size_t>(k)].adjoint());
    R_.triangularView<Eigen::Upper>().solveInPlace(b);
  }

  /// x with (H - lambda)^H x = b: x = Q R^{-H} b.
  void solve_adjoint(Eigen::VectorXcd& b) const {
    R_.adjoint().triangularView<Eigen::Lower>().solveInPlace(b);
    for (int k = n_ - 2; k >= 0; --k)
      b.applyOnTheLeft(k, k + 1, rot_[static_cast<std::size_t>(k)]);
  }

 private:
  int n_ = 0;
  MatrixXc R_;
  std::vector<Eigen::JacobiRotation<Complex>> rot_;
};

/// Smallest singular value of (H - lambda) via inverse power iteration on
/// ((H - lambda)^H (H - lambda))^{-1}.
inline double hessenberg_sigma_min(const MatrixXc& H, Complex lambda) {
  MatrixXc shifted = H;
  shifted.diagonal().array() -= lambda;
  HessenbergQr qr(shifted);
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(H.rows()).normalized();
  double inv_sq = 0.0;
  Eigen::VectorXcd y;
  for (int it = 0; it < 40; ++it) {
    y = v;
    qr.solve_adjoint(y);
    qr.solve(y);
    double norm = y.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return 0.0;
    v = y / norm;
    if (it > 4 && std::abs(norm - inv_sq) <= 1e-6 * norm) {
      inv_sq = norm;
      break;
    }
    inv_sq = norm;
  }
  return 1.0 / std::sqrt(inv_sq);
}

}  // namespace detail

/// Per-lambda smallest singular value of T_n(a - lambda). Subtracting lambda
/// from the symbol only shifts the main diagonal, and sigma_min is invariant
/// under the unitary Hessenberg similarity of the section, so the section is
/// reduced to Hessenberg form once and every lambda costs O(n^2): a Givens
/// QR plus inverse power iteration.
inline std::vector<SweepPoint> sigma_min_sweep(const PcSymbol& a,
                                               const std::vector<Complex>& lambda_grid,
                                               int n = 512, int fft_size = 8192) {
  require(n <= 1024, "sigma_min_sweep: section size beyond desk scale");
  ToeplitzSection T = fourier_toeplitz(a, fft_size, n);
  MatrixXc H = Eigen::HessenbergDecomposition<MatrixXc>(T.matrix()).matrixH();
  std::vector<SweepPoint> out;
  out.reserve(lambda_grid.size());
  for (Complex lambda : lambda_grid)
    out.push_back({lambda, detail::hessenberg_sigma_min(H, lambda)});
  return out;
}

struct OracleThresholds {
  double sigma_in = 0.05;   // sigma_min below this marks lambda numerically in
  double sigma_out = 0.1;   // sigma_min above this marks lambda numerically out
  double guard = 0.1;       // distance to the predicted set excluded from scoring
};

struct OracleReport {
  double agreement_rate = 0.0;
  int classified = 0;
  int unclassified = 0;
  std::vector<Complex> disagreements;
};

/// Scores the sigma_min sweep against the predicted essential-spectrum point
/// cloud. Lambdas within the guard band of the predicted set, or with
/// sigma_min between the two thresholds, stay unclassified.
inline OracleReport cluster_compare(const std::vector<Complex>& predicted_cloud,
                                    const std::vector<SweepPoint>& sweep,
                                    const OracleThresholds& thr = {}) {
  require(!predicted_cloud.empty() && !sweep.empty(),
          "cluster_compare: empty grids");
  OracleReport rep;
  int agree = 0;
  for (const auto& pt : sweep) {
    double dist = 1e300;
    for (Complex p : predicted_cloud)
      dist = std::min(dist, std::abs(pt.lambda - p));
    if (dist <= thr.guard) {
      ++rep.unclassified;
      continue;
    }
    bool predicted_in = false;  // off the guard band the set is not hit
    bool numeric_in;
    if (pt.sigma_min < thr.sigma_in)
      numeric_in = true;
    else if (pt.sigma_min > thr.sigma_out)
      numeric_in = false;
    else {
      ++rep.unclassified;
      continue;
    }
    ++rep.classified;
    if (numeric_in == predicted_in)
      ++agree;
    else
      rep.disagreements.push_back(pt.lambda);
  }
  rep.agreement_rate =
      rep.classified > 0
          ? static_cast<double>(agree) / static_cast<double>(rep.classified)
          : 1.0;
  return rep;
}

}  // namespace sio
