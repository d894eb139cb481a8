#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sio {

using Complex = std::complex<double>;

/// Lower/upper index pair of a submultiplicative profile.
struct IndexPair {
  double lower = 0.0;
  double upper = 0.0;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Fractional part mapped into [0, 1).
inline double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;  // guards the x = -eps rounding case
  return f;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace sio
