#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <random>

#include "hardy/circle_fft.hpp"

namespace testing {

using hardy::cd;
using hardy::CVector;

inline hardy::AnalyticFunction poly(std::initializer_list<cd> coeffs) {
  CVector c(static_cast<Eigen::Index>(coeffs.size()));
  Eigen::Index k = 0;
  for (const cd& x : coeffs) c[k++] = x;
  return hardy::AnalyticFunction(c);
}

inline hardy::AnalyticFunction random_poly(std::mt19937_64& rng, std::size_t degree) {
  std::normal_distribution<double> normal;
  CVector c(static_cast<Eigen::Index>(degree + 1));
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] = cd(normal(rng), normal(rng));
  return hardy::AnalyticFunction(c);
}

/// Direct O(n) evaluation of the k-th Fourier coefficient from samples.
inline cd direct_fourier(const hardy::BoundaryFunction& f, long k) {
  cd sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += f[j] * std::polar(1.0, -static_cast<double>(k) * f.grid().theta(j));
  return sum / static_cast<double>(f.size());
}

inline double max_diff(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testing
