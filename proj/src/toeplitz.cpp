#include "hardy/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/SVD>

namespace hardy {

namespace {
constexpr double kMinRelTol = 1e-12;
constexpr double kMaxRelTol = 1e-2;
}  // namespace

ToeplitzMatrix::ToeplitzMatrix(BoundaryFunction symbol, std::size_t m) : symbol_(std::move(symbol)), m_(m) {
  if (m == 0 || m > symbol_.size() / 4) {
    throw Error(ErrorKind::OrderTooLarge,
                "order " + std::to_string(m) + " exceeds n/4 for grid size " + std::to_string(symbol_.size()));
  }
  diagonals_.resize(static_cast<Eigen::Index>(2 * m - 1));
  for (long d = -static_cast<long>(m) + 1; d < static_cast<long>(m); ++d) {
    diagonals_[static_cast<Eigen::Index>(d + static_cast<long>(m) - 1)] = symbol_.fourier(d);
  }
}

CMatrix ToeplitzMatrix::dense() const {
  CMatrix t(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
  for (std::size_t k = 0; k < m_; ++k)
    for (std::size_t j = 0; j < m_; ++j) t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = entry(j, k);
  return t;
}

CVector ToeplitzMatrix::apply(const CVector& h) const {
  CVector x = CVector::Zero(static_cast<Eigen::Index>(m_));
  const Eigen::Index keep = std::min<Eigen::Index>(h.size(), static_cast<Eigen::Index>(m_));
  x.head(keep) = h.head(keep);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(m_));
  for (std::size_t j = 0; j < m_; ++j) {
    cd acc = 0.0;
    for (std::size_t k = 0; k < m_; ++k) acc += entry(j, k) * x[static_cast<Eigen::Index>(k)];
    out[static_cast<Eigen::Index>(j)] = acc;
  }
  return out;
}

AnalyticFunction ToeplitzMatrix::apply_fast(const AnalyticFunction& h) const {
  const BoundaryFunction product = symbol_ * h.on(symbol_.grid());
  return project_plus(product).truncated(m_ - 1);
}

CMatrix analytic_toeplitz(const AnalyticFunction& h, std::size_t m) {
  CMatrix t = CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = k; j < m; ++j) t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = h.coeff(j - k);
  return t;
}

CMatrix coanalytic_toeplitz(const AnalyticFunction& h, std::size_t m) { return analytic_toeplitz(h, m).adjoint(); }

// ---------------------------------------------------------------------------

Subspace::Subspace(CMatrix basis, double tol) : basis_(std::move(basis)), tol_(tol) {}

Subspace Subspace::zero(std::size_t order, double tol) {
  return Subspace(CMatrix(static_cast<Eigen::Index>(order), 0), tol);
}

Subspace Subspace::span(const CMatrix& vectors, double rank_tol) {
  if (vectors.cols() == 0) return zero(static_cast<std::size_t>(vectors.rows()), rank_tol);
  Eigen::BDCSVD<CMatrix> svd(vectors, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > rank_tol * s[0]) ++rank;
  return Subspace(svd.matrixU().leftCols(rank), rank_tol);
}

CVector Subspace::project(const CVector& v) const { return basis_ * (basis_.adjoint() * v); }

double Subspace::residual(const CVector& v) const {
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  return (v - project(v)).norm() / nv;
}

double Subspace::orthonormality_defect() const {
  if (dim() == 0) return 0.0;
  const CMatrix g = basis_.adjoint() * basis_ - CMatrix::Identity(basis_.cols(), basis_.cols());
  return g.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

KernelResult numerical_kernel(const CMatrix& a, double rel_tol) {
  if (!(rel_tol >= kMinRelTol && rel_tol <= kMaxRelTol)) {
    throw Error(ErrorKind::ConfigInvalid, "kernel tolerance " + std::to_string(rel_tol) + " outside [1e-12, 1e-2]");
  }
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  KernelResult out{Subspace::zero(static_cast<std::size_t>(a.cols()), rel_tol), {}, 0.0};
  out.singular_values.assign(s.data(), s.data() + s.size());
  // Columns beyond the row count are kernel directions with sigma = 0.
  std::vector<double> sigma = out.singular_values;
  sigma.resize(static_cast<std::size_t>(a.cols()), 0.0);

  const double smax = sigma.empty() ? 0.0 : sigma.front();
  out.threshold = rel_tol * smax;
  std::size_t rank = 0;
  while (rank < sigma.size() && sigma[rank] >= out.threshold && sigma[rank] > 0.0) ++rank;

  const std::size_t m = sigma.size();
  if (rank == 0) {
    out.gap_ratio = std::numeric_limits<double>::infinity();
  } else if (rank < m) {
    out.gap_ratio = sigma[rank] > 0.0 ? sigma[rank - 1] / sigma[rank] : std::numeric_limits<double>::infinity();
  } else {
    out.gap_ratio = out.threshold > 0.0 ? sigma[rank - 1] / out.threshold : std::numeric_limits<double>::infinity();
  }
  out.no_spectral_gap = out.gap_ratio < kMinGapRatio;
  out.kernel = Subspace(svd.matrixV().rightCols(static_cast<Eigen::Index>(m - rank)), rel_tol);
  return out;
}

KernelResult numerical_kernel(const ToeplitzMatrix& t, double rel_tol) { return numerical_kernel(t.dense(), rel_tol); }

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorKind::DimMismatch,
                "subspace orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
  }
  const std::size_t k = std::min(a.dim(), b.dim());
  if (k == 0) return {};
  // Cosines from A^H B; sines from the part of B outside A. The sine branch
  // keeps small angles accurate where arccos would lose half the digits.
  Eigen::BDCSVD<CMatrix> cos_svd(a.basis().adjoint() * b.basis());
  const CMatrix outside = b.basis() - a.basis() * (a.basis().adjoint() * b.basis());
  Eigen::BDCSVD<CMatrix> sin_svd(outside);

  std::vector<double> cosines(cos_svd.singularValues().data(), cos_svd.singularValues().data() + cos_svd.singularValues().size());
  std::vector<double> sines(sin_svd.singularValues().data(), sin_svd.singularValues().data() + sin_svd.singularValues().size());
  std::sort(sines.begin(), sines.end());
  // When dim b > dim a the extra sine values belong to directions of b that
  // have no partner in a; keep the smallest k.
  std::vector<double> angles(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double c = std::clamp(cosines[i], 0.0, 1.0);
    if (c > std::sqrt(0.5) && i < sines.size()) {
      angles[i] = std::asin(std::clamp(sines[i], 0.0, 1.0));
    } else {
      angles[i] = std::acos(c);
    }
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double max_principal_angle(const Subspace& a, const Subspace& b) {
  const auto angles = principal_angles(a, b);
  return angles.empty() ? 0.0 : angles.back();
}

void write_spectrum_csv(std::ostream& out, const std::vector<double>& sigma) {
  out << "index,sigma\n";
  out.precision(17);
  for (std::size_t i = 0; i < sigma.size(); ++i) out << i << ',' << sigma[i] << '\n';
}

}  // namespace hardy
