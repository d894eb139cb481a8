#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sio/types.hpp"
#include "sio/weight.hpp"

namespace sio {

/// Submultiplicative envelope sampled on the geometric grid x = 2^k,
/// k = -K..K. Non-convergence of the limsup stabilization is reported,
/// never silently replaced by a value.
struct SubmultProfile {
  int K = 0;
  std::vector<double> log_phi;  // index k+K holds log Phi(2^k)
  bool converged = true;
  std::string source;

  double log_phi_at(int k) const {
    return log_phi[static_cast<std::size_t>(k + K)];
  }
};

struct PhiOptions {
  int K = 20;               // x ranges over 2^{-K}..2^{K}
  double B0 = 0.0;          // first cutoff; 0 means profile x_max
  int cutoffs = 21;         // B_j = B0 * cutoff_ratio^j
  double cutoff_ratio = 0.25;
  int y_per_decade = 512;
  double tail_decades = 3.0;  // y grid extends below the last cutoff
  double conv_rel_tol = 1e-3;
};

/// Stabilized estimate of Phi_rho^0(x) = limsup_{y->0} rho(xy)/rho(y):
/// tail suprema over y <= B_j for a decreasing cutoff sequence, taking the
/// value once two consecutive cutoffs agree to conv_rel_tol.
inline SubmultProfile phi_estimate(const WeightProfile& rho,
                                   const PhiOptions& opt = {}) {
  const double B0 = opt.B0 > 0.0 ? opt.B0 : rho.x_max();
  require(B0 > 0.0, "phi_estimate: empty cutoff range");
  const double ln_ratio = std::log(opt.cutoff_ratio);
  const double ln_B_last =
      std::log(B0) + ln_ratio * static_cast<double>(opt.cutoffs - 1);
  const double ln_y_min = ln_B_last - opt.tail_decades * std::log(10.0);
  const double ln_y_max = std::log(B0);
  const int ny = std::max(
      2, static_cast<int>((ln_y_max - ln_y_min) / std::log(10.0) *
                          static_cast<double>(opt.y_per_decade)));
  std::vector<double> ln_y(static_cast<std::size_t>(ny));
  for (int i = 0; i < ny; ++i)
    ln_y[static_cast<std::size_t>(i)] =
        ln_y_min + (ln_y_max - ln_y_min) * static_cast<double>(i) /
                       static_cast<double>(ny - 1);

  SubmultProfile out;
  out.K = opt.K;
  out.log_phi.assign(static_cast<std::size_t>(2 * opt.K + 1), 0.0);
  out.source = "phi0";
  const double ln2 = std::log(2.0);
  std::vector<double> log_ratio(ln_y.size());
  for (int k = -opt.K; k <= opt.K; ++k) {
    const double lx = static_cast<double>(k) * ln2;
    for (std::size_t i = 0; i < ln_y.size(); ++i) {
      // x<=1: rho(x y)/rho(y); x>1: rho(y)/rho(y/x). Both are log-additive.
      if (k <= 0)
        log_ratio[i] = rho.log_value_log(lx + ln_y[i]) - rho.log_value_log(ln_y[i]);
      else
        log_ratio[i] = rho.log_value_log(ln_y[i]) - rho.log_value_log(ln_y[i] - lx);
    }
    // prefix max over ascending y gives sup over the y-grid below a cutoff
    std::vector<double> pref(log_ratio.size());
    double run = -1e300;
    for (std::size_t i = 0; i < log_ratio.size(); ++i) {
      run = std::max(run, log_ratio[i]);
      pref[i] = run;
    }
    double prev = 0.0;
    bool have_prev = false, conv = false;
    double val = pref.back();
    for (int j = 0; j < opt.cutoffs; ++j) {
      double ln_B = std::log(B0) + ln_ratio * static_cast<double>(j);
      // last grid index with ln_y <= ln_B
      auto it = std::upper_bound(ln_y.begin(), ln_y.end(), ln_B + 1e-12);
      if (it == ln_y.begin()) break;
      std::size_t idx = static_cast<std::size_t>(it - ln_y.begin()) - 1;
      val = pref[idx];
      if (have_prev && std::abs(val - prev) <=
                           opt.conv_rel_tol * (1.0 + std::abs(val)))
        conv = true;
      else
        conv = false;
      prev = val;
      have_prev = true;
    }
    out.log_phi[static_cast<std::size_t>(k + opt.K)] = val;
    if (!conv) out.converged = false;
  }
  return out;
}

/// Index pair read off at the grid endpoints x = 2^{+-K}.
inline IndexPair index_pair(const SubmultProfile& phi) {
  const double ln2 = std::log(2.0);
  double denom = static_cast<double>(phi.K) * ln2;
  return IndexPair{-phi.log_phi_at(-phi.K) / denom,
                   phi.log_phi_at(phi.K) / denom};
}

struct MoReport {
  IndexPair indices;
  double alpha_sup = 0.0;  // sup_{x<1} log Phi / log x  (cross-check form)
  double beta_inf = 0.0;   // inf_{x>1} log Phi / log x
  bool consistent = true;  // endpoint slopes agree with sup/inf within 5e-3
  bool converged = true;
};

/// Matuszewska-Orlicz indices (m, M) of a weight profile.
inline MoReport mo_indices(const WeightProfile& rho, const PhiOptions& opt = {}) {
  SubmultProfile phi = phi_estimate(rho, opt);
  MoReport rep;
  rep.converged = phi.converged;
  rep.indices = index_pair(phi);
  const double ln2 = std::log(2.0);
  double a_sup = -1e300, b_inf = 1e300;
  for (int k = -phi.K; k <= -1; ++k)
    a_sup = std::max(a_sup, phi.log_phi_at(k) / (static_cast<double>(k) * ln2));
  for (int k = 1; k <= phi.K; ++k)
    b_inf = std::min(b_inf, phi.log_phi_at(k) / (static_cast<double>(k) * ln2));
  rep.alpha_sup = a_sup;
  rep.beta_inf = b_inf;
  rep.consistent = std::abs(a_sup - rep.indices.lower) <= 5e-3 &&
                   std::abs(rep.indices.upper - b_inf) <= 5e-3;
  return rep;
}

}  // namespace sio
