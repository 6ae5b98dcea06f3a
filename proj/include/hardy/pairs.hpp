#pragma once

// Pairs (b, a) with |a|^2 + |b|^2 = 1 on the circle and the de
// Branges-Rovnyak space H(b) they generate. Elements of H(b) are carried by
// their H^2 preimage u under T_{1 - conj(lambda) b} T_{conj(F_lambda)}; for
// lambda = 1 this is u = f q where q is the H^2(mu) representer.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/QR>

#include "hardy/circle_fft.hpp"
#include "hardy/functions.hpp"
#include "hardy/toeplitz.hpp"

namespace hardy {

inline constexpr double kPairIdentityTol = 1e-8;
inline constexpr double kUnitNormTol = 1e-6;
inline constexpr double kNotInRangeTol = 1e-5;

class Pair {
 public:
  /// Pair given by evaluators valid on the closed disk. `special` is the
  /// caller's assertion that the associated measure is absolutely continuous.
  /// Throws InvalidPair if the pair identity or sup|b| < 1 fails on the grid.
  static Pair from_closed_form(const Grid& grid, DiskFn b, DiskFn a, bool special);

  const Grid& grid() const noexcept { return grid_; }
  const AnalyticFunction& b() const noexcept { return b_; }
  const AnalyticFunction& a() const noexcept { return a_; }
  const AnalyticFunction& f() const noexcept { return f_; }
  const BoundaryFunction& b_boundary() const noexcept { return b_boundary_; }
  const BoundaryFunction& a_boundary() const noexcept { return a_boundary_; }
  const BoundaryFunction& f_boundary() const noexcept { return f_boundary_; }

  /// Point evaluation: closed form when available, Taylor data otherwise.
  cd b_at(cd z) const;
  cd a_at(cd z) const;
  cd f_at(cd z) const { return a_at(z) / (1.0 - b_at(z)); }

  bool special() const noexcept { return special_; }
  /// Im of (1 + b)/(1 - b) at the origin.
  double herglotz_constant() const noexcept { return herglotz_constant_; }
  /// max over nodes of ||a|^2 + |b|^2 - 1|.
  double identity_defect() const noexcept { return identity_defect_; }
  double sup_b() const noexcept { return sup_b_; }
  /// max over nodes of ||a/(1-b)| - |f_input||, zero for closed-form pairs.
  double reconstruction_defect() const noexcept { return reconstruction_defect_; }

 private:
  Pair(Grid grid, BoundaryFunction b, BoundaryFunction a, bool special);
  friend Pair pair_from_outer(const AnalyticFunction& f, const Grid& grid);

  Grid grid_;
  BoundaryFunction b_boundary_, a_boundary_, f_boundary_;
  AnalyticFunction b_, a_, f_;
  DiskFn b_fn_, a_fn_;
  bool special_ = false;
  double herglotz_constant_ = 0.0;
  double identity_defect_ = 0.0;
  double sup_b_ = 0.0;
  double reconstruction_defect_ = 0.0;
};

/// The special pair associated with a unit-norm outer f: b is the Cayley
/// transform of the Herglotz transform of |f|^2 and a = f (1 - b).
Pair pair_from_outer(const AnalyticFunction& f, const Grid& grid);

struct FLambda {
  cd lambda;
  BoundaryFunction boundary;  // a / (1 - conj(lambda) b)
  AnalyticFunction coeffs;
  double min_denominator = 0.0;
};

/// F_lambda = a / (1 - conj(lambda) b). Throws DenominatorVanishing when
/// min |1 - conj(lambda) b| < 1e-10 on the grid.
FLambda f_lambda(const Pair& p, cd lambda);

/// Coefficients of (1 - conj(beta) b(z)) / (1 - conj(w) z) for |w| <= 1,
/// degrees 0..n/2-1, where beta = b(w) (or its boundary limit).
AnalyticFunction kernel_series(const Pair& p, cd w, cd beta);

/// k_w^b for |w| < 1.
AnalyticFunction dbr_kernel(const Pair& p, cd w);

enum class AngularVerdict { Holds, Fails, Inconclusive };
std::string_view to_string(AngularVerdict v);

struct AngularDerivativeReport {
  AngularVerdict verdict = AngularVerdict::Inconclusive;
  std::array<std::size_t, 3> orders{128, 256, 512};
  std::array<double, 3> norms{};   // H^2 norms of the truncations
  std::array<double, 2> growth{};  // ratios of successive squared norms
};

/// Norm growth of the truncations of F_lambda / (1 - conj(z0) z). Squared
/// norms are compared so that the logarithmic divergence of a pole on the
/// circle shows as a factor-2 growth per doubling.
AngularDerivativeReport angular_derivative_test(const Pair& p, cd z0, cd lambda = 1.0);

struct BoundaryKernel {
  AnalyticFunction kernel;
  cd b_z0;
  AngularDerivativeReport test;
};

/// Radial limit of b at a boundary point from three radii 1 - 2^{-j} and
/// two Richardson steps.
cd radial_limit(const Pair& p, cd z0);

/// k_{z0}^b for |z0| = 1. Throws NoAngularDerivative unless the angular
/// derivative test holds at z0 with lambda = 1.
BoundaryKernel boundary_kernel(const Pair& p, cd z0);

/// S^* h - (h(0)/F(0)) S^* F. Throws OriginZero if F(0) = 0.
AnalyticFunction a_lambda_apply(const FLambda& f, const AnalyticFunction& h);
AnalyticFunction a_lambda_apply(const Pair& p, cd lambda, const AnalyticFunction& h);

struct HbElement {
  AnalyticFunction h;         // the element as an H^2 function
  AnalyticFunction preimage;  // u with T_{1-conj(lambda)b} T_{conj(F)} u = h
  double residual = 0.0;      // ||T u - h|| / ||h||
};

/// Truncated model of H(b) for a special pair: preimages live in degrees
/// 0..m-1 and are found by least squares against the first min(2m, n/2)
/// coefficients of h.
class HbSpace {
 public:
  /// Throws NotSpecialPair, OrderTooLarge, DenominatorVanishing.
  HbSpace(Pair pair, std::size_t m, cd lambda = 1.0);

  const Pair& pair() const noexcept { return pair_; }
  std::size_t order() const noexcept { return m_; }
  const FLambda& f_lambda() const noexcept { return f_; }

  /// T_{1-conj(lambda) b} T_{conj(F)} u, computed on the grid.
  AnalyticFunction apply(const AnalyticFunction& u) const;

  /// Least-squares preimage with residual; never throws on range failure.
  HbElement represent(const AnalyticFunction& h) const;
  /// As represent(), but residual > 1e-5 throws NotInRange.
  HbElement solve(const AnalyticFunction& h) const;
  HbElement from_preimage(const AnalyticFunction& u) const;

  /// Representer q = u / F as boundary samples.
  BoundaryFunction representer(const HbElement& x) const;

  /// Backend A: weighted pairing of representers with weight |F|^2.
  cd inner(const HbElement& x, const HbElement& y) const;
  double norm(const HbElement& x) const;

  /// Backend B: <x, y>_2 + <x+, y+>_2 with T_{conj a} x+ = T_{conj b} x,
  /// independent of the isometry. Solved on the m-section.
  cd inner_plus(const AnalyticFunction& x, const AnalyticFunction& y) const;
  AnalyticFunction plus_function(const AnalyticFunction& x) const;

  /// Gram matrix G(j, k) = <z^k, z^j>_b for 0 <= j, k < count, and the
  /// preimages of those monomials (columns).
  struct MonomialGram {
    CMatrix preimages;
    CMatrix gram;
    double max_residual = 0.0;
  };
  MonomialGram monomial_gram(std::size_t count) const;

 private:
  Pair pair_;
  std::size_t m_;
  std::size_t rows_;
  FLambda f_;
  BoundaryFunction left_symbol_;  // 1 - conj(lambda) b
  Eigen::ColPivHouseholderQR<CMatrix> qr_;
};

struct ComplementResult {
  std::size_t cutoff = 0;
  std::size_t dim = 0;
  std::size_t dim_at_double = 0;
  bool degenerate = false;      // cutoff 0: the whole truncated space
  std::vector<double> cosines;  // between a z^k span and monomial span, ascending
  Subspace preimages;           // complement in preimage coordinates
  Subspace functions;           // complement as coefficient vectors in H^2
};

/// Orthogonal complement, inside span{z^k : k < d} of H(b0), of the span of
/// {a z^k : k < d}, with directions kept when their cosine to the a z^k span
/// is below tol. Repeats at 2d; a dimension change throws ComplementUnstable.
ComplementResult ma_complement(const HbSpace& space, std::size_t d, double tol = kDefaultKernelTol);

/// ||Y^* c - conj(z0) c||_b / ||c||_b on the Galerkin model of Y over
/// polynomials of degree < basis_size.
double ystar_eigencheck(const HbSpace& space, cd z0, const AnalyticFunction& candidate, std::size_t basis_size = 64);

/// H(b)-norm (projected onto polynomials of degree < basis_size) of
/// T A_lambda q - Y^* T q for the space's isometry T.
double intertwining_residual(const HbSpace& space, const AnalyticFunction& q, std::size_t basis_size = 64);

}  // namespace hardy
