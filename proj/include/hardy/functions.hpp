#pragma once

// Structured inner and outer functions with exact disk/boundary evaluation.

#include <cstddef>
#include <functional>
#include <vector>

#include "hardy/circle_fft.hpp"
#include "hardy/toeplitz.hpp"

namespace hardy {

/// Closed-form evaluator on the closed disk.
using DiskFn = std::function<cd(cd)>;

/// c * z^p * prod_j (|r_j|/r_j) (r_j - z)/(1 - conj(r_j) z), |c| = 1.
class InnerFn {
 public:
  static InnerFn monomial(unsigned power);
  static InnerFn constant(cd unimodular);
  /// Zeros at the origin contribute factors of z. Throws ZeroOnBoundary if
  /// any |zero| >= 1 - 1e-12.
  static InnerFn blaschke(const std::vector<cd>& zeros);

  friend InnerFn operator*(const InnerFn& a, const InnerFn& b);

  cd operator()(cd z) const;
  BoundaryFunction on(const Grid& grid) const;
  /// Taylor coefficients of degrees 0..order, from boundary samples on `grid`.
  AnalyticFunction coefficients(const Grid& grid, std::size_t order) const;

  unsigned origin_multiplicity() const noexcept { return origin_power_; }
  const std::vector<cd>& nonzero_zeros() const noexcept { return zeros_; }
  /// All zeros, the origin repeated by multiplicity.
  std::vector<cd> zeros() const;
  cd constant_factor() const noexcept { return constant_; }

 private:
  unsigned origin_power_ = 0;
  std::vector<cd> zeros_;
  cd constant_ = 1.0;
};

InnerFn blaschke(const std::vector<cd>& zeros);

/// Zero-free analytic functions: (1 - z)^alpha, outer rationals, or the outer
/// function with a prescribed boundary modulus.
class OuterFn {
 public:
  enum class Kind { Power, Rational, FromModulus };

  static OuterFn power(double alpha);
  /// Ascending polynomial coefficients; denominator(0) must be nonzero.
  static OuterFn rational(CVector numerator, CVector denominator);
  static OuterFn from_modulus(const BoundaryFunction& modulus);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return alpha_; }

  /// Principal branch for powers; Horner on the Taylor data for FromModulus
  /// (interior points only).
  cd operator()(cd z) const;
  BoundaryFunction on(const Grid& grid) const;
  AnalyticFunction coefficients(std::size_t order) const;

  /// Winding numbers of the function on |z| = 0.5, 0.9, 0.99.
  std::vector<long> winding_diagnostic() const;
  bool passes_outer_diagnostic() const;

 private:
  Kind kind_ = Kind::Power;
  double alpha_ = 0.0;
  CVector numerator_;
  CVector denominator_;
  AnalyticFunction taylor_;
  std::shared_ptr<const BoundaryFunction> boundary_;
};

/// g(z) = (1 - z)^alpha.
OuterFn power_outer(double alpha);

/// Generalized binomial series of (1 - z)^beta, degrees 0..order.
CVector binomial_series(double beta, std::size_t order);

/// Szego kernel k_lambda(z) = 1/(1 - conj(lambda) z), degrees 0..order.
AnalyticFunction cauchy_kernel(cd lambda, std::size_t order);

/// Orthonormal basis of K_I = H^2 minus I H^2 in C^m (degrees 0..m-1),
/// spanned by z^j for the zero at the origin and by k_lambda for the simple
/// nonzero zeros. Repeated nonzero zeros throw RepeatedZeros.
Subspace model_space_basis(const InnerFn& inner, std::size_t m);

struct HelsonQuotient {
  BoundaryFunction values;          // i (I1 + I2) / (I1 - I2)
  double max_imag = 0.0;
  std::vector<long> difference_winding;  // I1 - I2 on |z| = 0.5, 0.9, 0.99
  bool outer_warning = false;       // nonzero winding: I1 - I2 not outer
};

/// Real-valued boundary quotient i (I1 + I2)/(I1 - I2). Throws DivisionBlowup
/// when |I1 - I2| < 1e-12 at a node.
HelsonQuotient helson_quotient(const InnerFn& i1, const InnerFn& i2, const Grid& grid);

}  // namespace hardy
