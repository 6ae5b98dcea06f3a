#pragma once

// Boundary-grid representation of functions on the unit circle and the
// Fourier machinery built on it: analysis/synthesis, the analytic (Riesz)
// projection, the Herglotz transform and outer functions from a modulus.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <utility>

#include <Eigen/Dense>

#include "hardy/error.hpp"

namespace hardy {

using cd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Half-sample offset grid: theta_j = 2*pi*(j + 1/2)/n, so z = 1 and z = -1
/// are never nodes.
class Grid {
 public:
  explicit Grid(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double theta(std::size_t j) const noexcept { return 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n_); }
  cd node(std::size_t j) const noexcept { return std::polar(1.0, theta(j)); }
  /// Highest analytic degree representable without folding: n/2 - 1.
  std::size_t max_degree() const noexcept { return n_ / 2 - 1; }

  /// Grid twice as fine.
  Grid refined() const { return Grid(2 * n_); }

  friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.n_ == b.n_; }
  friend bool operator!=(const Grid& a, const Grid& b) noexcept { return a.n_ != b.n_; }

 private:
  std::size_t n_;
};

/// Complex samples on a Grid with lazily computed Fourier coefficients.
/// Values never change after construction; copies share the coefficient cache.
class BoundaryFunction {
 public:
  BoundaryFunction(Grid grid, CVector values);

  template <class Fn>
  static BoundaryFunction sample(const Grid& grid, Fn&& fn) {
    CVector v(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t j = 0; j < grid.size(); ++j) v[static_cast<Eigen::Index>(j)] = fn(grid.node(j));
    return BoundaryFunction(grid, std::move(v));
  }

  /// Inverse of coefficients(): `coeffs` is in FFT order (index k mod n).
  static BoundaryFunction synthesize(const Grid& grid, const CVector& coeffs);

  const Grid& grid() const noexcept { return grid_; }
  const CVector& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }
  cd operator[](std::size_t j) const { return values_[static_cast<Eigen::Index>(j)]; }

  /// Fourier coefficients in FFT order: entry k (mod n) holds c_k for
  /// -n/2 <= k < n/2.
  const CVector& coefficients() const;
  cd fourier(long k) const;

  BoundaryFunction conj() const;
  BoundaryFunction abs2() const;
  BoundaryFunction abs() const;
  BoundaryFunction real() const;

  template <class Fn>
  BoundaryFunction map(Fn&& fn) const {
    CVector v = values_.unaryExpr([&](const cd& x) { return cd(fn(x)); });
    return BoundaryFunction(grid_, std::move(v));
  }

  double max_abs() const;
  double min_abs() const;
  double max_abs_imag() const;
  /// (1/n) sum |v_j|^2, the grid L2 norm squared.
  double l2_norm_squared() const;

  friend BoundaryFunction operator+(const BoundaryFunction& a, const BoundaryFunction& b);
  friend BoundaryFunction operator-(const BoundaryFunction& a, const BoundaryFunction& b);
  friend BoundaryFunction operator*(const BoundaryFunction& a, const BoundaryFunction& b);
  friend BoundaryFunction operator/(const BoundaryFunction& a, const BoundaryFunction& b);
  friend BoundaryFunction operator*(cd s, const BoundaryFunction& a);
  friend BoundaryFunction operator+(cd s, const BoundaryFunction& a);

 private:
  struct Cache {
    std::once_flag once;
    CVector coeffs;
  };

  Grid grid_;
  CVector values_;
  std::shared_ptr<Cache> cache_;
};

/// One-sided coefficient vector (degrees 0..order) of an H^2 element.
class AnalyticFunction {
 public:
  AnalyticFunction() : coeffs_(CVector::Zero(1)) {}
  explicit AnalyticFunction(CVector coeffs);

  static AnalyticFunction constant(cd c) { return AnalyticFunction(CVector::Constant(1, c)); }
  static AnalyticFunction monomial(std::size_t k, cd c = 1.0);

  const CVector& coeffs() const noexcept { return coeffs_; }
  std::size_t order() const noexcept { return static_cast<std::size_t>(coeffs_.size()) - 1; }
  cd coeff(std::size_t k) const { return k <= order() ? coeffs_[static_cast<Eigen::Index>(k)] : cd{}; }
  cd origin_value() const { return coeffs_[0]; }

  /// Horner evaluation; meaningful for |z| < 1 or for polynomials.
  cd operator()(cd z) const;

  double h2_norm() const { return coeffs_.norm(); }

  /// Keeps degrees 0..m, zero-padding when m exceeds the current order.
  AnalyticFunction truncated(std::size_t m) const;
  /// Coefficient vector of length m (degrees 0..m-1), zero padded.
  CVector head(std::size_t m) const;

  /// Boundary samples on `grid`; requires order <= grid.max_degree().
  BoundaryFunction on(const Grid& grid) const;

  AnalyticFunction shifted_down() const;  // S^*
  AnalyticFunction shifted_up() const;    // S

  friend AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b);
  friend AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b);
  friend AnalyticFunction operator*(cd s, const AnalyticFunction& a);

 private:
  CVector coeffs_;
};

/// Cauchy product truncated to degree `order`.
AnalyticFunction multiply(const AnalyticFunction& a, const AnalyticFunction& b, std::size_t order);

/// P_+ : keeps the coefficients of nonnegative degree (0..n/2-1).
AnalyticFunction project_plus(const BoundaryFunction& f);

/// Herglotz transform of a real density: c_0 + 2 sum_{k>=1} c_k z^k.
AnalyticFunction herglotz(const BoundaryFunction& w);

/// Boundary values F = v + i*(conjugate function of v) of the analytic
/// function whose real part is the real sample vector v. Unlike
/// herglotz(w).on(grid), Re F reproduces v exactly at every node.
BoundaryFunction analytic_completion(const BoundaryFunction& v);

/// Outer function with |O| = w on the boundary and O(0) > 0, computed as the
/// exponential of the Herglotz transform of log w.
struct OuterFromModulus {
  AnalyticFunction coeffs;
  BoundaryFunction boundary;
};
OuterFromModulus outer_from_modulus(const BoundaryFunction& w);

/// sum_k f_k conj(g_k), zero padding the shorter vector.
cd h2_inner(const AnalyticFunction& f, const AnalyticFunction& g);

/// (1/2pi) int f conj(g) w dtheta by grid quadrature.
cd weighted_inner(const AnalyticFunction& f, const AnalyticFunction& g, const BoundaryFunction& w);
cd weighted_inner(const BoundaryFunction& f, const BoundaryFunction& g, const BoundaryFunction& w);
/// Unweighted grid pairing (1/n) sum f_j conj(g_j).
cd grid_inner(const BoundaryFunction& f, const BoundaryFunction& g);

/// Winding number of t -> fn(r e^{it}) around 0, by accumulated phase.
template <class Fn>
long winding_number(Fn&& fn, double r, std::size_t samples = 4096) {
  double total = 0.0;
  cd prev = fn(cd(r, 0.0));
  for (std::size_t j = 1; j <= samples; ++j) {
    const cd cur = fn(std::polar(r, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples)));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return std::lround(total / (2.0 * kPi));
}

}  // namespace hardy
