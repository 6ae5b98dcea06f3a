#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "hardy/circle_fft.hpp"

namespace hardy {

/// m x m section of T_phi with entries T[j,k] = phi_hat(j - k).
class ToeplitzMatrix {
 public:
  /// Requires m <= n/4 for the symbol's grid (OrderTooLarge otherwise).
  ToeplitzMatrix(BoundaryFunction symbol, std::size_t m);

  std::size_t order() const noexcept { return m_; }
  const BoundaryFunction& symbol() const noexcept { return symbol_; }

  cd entry(std::size_t j, std::size_t k) const {
    return diagonals_[static_cast<Eigen::Index>(m_ - 1 + j - k)];
  }
  CMatrix dense() const;

  /// Dense matrix-vector product on the first m coefficients of h.
  CVector apply(const CVector& h) const;
  /// P_+(phi h) by FFT on the symbol grid, truncated to degree m - 1.
  AnalyticFunction apply_fast(const AnalyticFunction& h) const;

 private:
  BoundaryFunction symbol_;
  std::size_t m_;
  CVector diagonals_;  // phi_hat(d) stored at index d + m - 1, |d| < m
};

/// Lower-triangular m x m section of T_h for analytic h (exact).
CMatrix analytic_toeplitz(const AnalyticFunction& h, std::size_t m);
/// Upper-triangular m x m section of T_{conj(h)} for analytic h (exact).
CMatrix coanalytic_toeplitz(const AnalyticFunction& h, std::size_t m);

/// Column-orthonormal basis of a subspace of coefficient space C^order.
class Subspace {
 public:
  Subspace(CMatrix basis, double tol);
  static Subspace zero(std::size_t order, double tol = 0.0);
  /// Orthonormal basis for the column span, dropping directions whose
  /// singular value falls below rank_tol times the largest.
  static Subspace span(const CMatrix& vectors, double rank_tol = 1e-12);

  const CMatrix& basis() const noexcept { return basis_; }
  std::size_t order() const noexcept { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  double tol() const noexcept { return tol_; }

  CVector project(const CVector& v) const;
  /// ||v - P v|| / ||v||.
  double residual(const CVector& v) const;
  /// max |(B^H B - I)_{jk}|.
  double orthonormality_defect() const;

 private:
  CMatrix basis_;
  double tol_;
};

struct KernelResult {
  Subspace kernel;
  std::vector<double> singular_values;  // descending
  double threshold = 0.0;               // absolute cut rel_tol * sigma_max
  double gap_ratio = std::numeric_limits<double>::infinity();
  bool no_spectral_gap = false;         // gap_ratio < 10
};

inline constexpr double kDefaultKernelTol = 1e-6;
inline constexpr double kMinGapRatio = 10.0;

/// Right singular vectors with sigma < rel_tol * sigma_max. The gap ratio is
/// the smallest retained sigma over the largest discarded one (over the cut
/// itself when nothing is discarded).
KernelResult numerical_kernel(const CMatrix& a, double rel_tol = kDefaultKernelTol);
KernelResult numerical_kernel(const ToeplitzMatrix& t, double rel_tol = kDefaultKernelTol);

/// Principal angles in radians, ascending; min(dim a, dim b) of them.
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);
double max_principal_angle(const Subspace& a, const Subspace& b);

/// CSV with header "index,sigma".
void write_spectrum_csv(std::ostream& out, const std::vector<double>& sigma);

}  // namespace hardy
