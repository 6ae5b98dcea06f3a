#include "hardy/functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardy {

namespace {

constexpr double kBoundaryMargin = 1e-12;
constexpr double kDivisionFloor = 1e-12;
constexpr double kDiagnosticRadii[] = {0.5, 0.9, 0.99};

cd blaschke_factor(cd r, cd z) { return (std::abs(r) / r) * (r - z) / (1.0 - std::conj(r) * z); }

cd polyval(const CVector& c, cd z) {
  cd acc = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------

InnerFn InnerFn::monomial(unsigned power) {
  InnerFn f;
  f.origin_power_ = power;
  return f;
}

InnerFn InnerFn::constant(cd unimodular) {
  if (std::abs(std::abs(unimodular) - 1.0) > 1e-12) {
    throw Error(ErrorKind::ZeroOnBoundary, "inner constant must be unimodular");
  }
  InnerFn f;
  f.constant_ = unimodular;
  return f;
}

InnerFn InnerFn::blaschke(const std::vector<cd>& zeros) {
  InnerFn f;
  for (const cd& r : zeros) {
    if (std::abs(r) >= 1.0 - kBoundaryMargin) {
      throw Error(ErrorKind::ZeroOnBoundary, "Blaschke zero with modulus " + std::to_string(std::abs(r)));
    }
    if (r == cd{}) ++f.origin_power_;
    else f.zeros_.push_back(r);
  }
  return f;
}

InnerFn blaschke(const std::vector<cd>& zeros) { return InnerFn::blaschke(zeros); }

InnerFn operator*(const InnerFn& a, const InnerFn& b) {
  InnerFn out;
  out.origin_power_ = a.origin_power_ + b.origin_power_;
  out.zeros_ = a.zeros_;
  out.zeros_.insert(out.zeros_.end(), b.zeros_.begin(), b.zeros_.end());
  out.constant_ = a.constant_ * b.constant_;
  return out;
}

cd InnerFn::operator()(cd z) const {
  cd v = constant_ * std::pow(z, static_cast<int>(origin_power_));
  for (const cd& r : zeros_) v *= blaschke_factor(r, z);
  return v;
}

BoundaryFunction InnerFn::on(const Grid& grid) const {
  return BoundaryFunction::sample(grid, [this](cd z) { return (*this)(z); });
}

AnalyticFunction InnerFn::coefficients(const Grid& grid, std::size_t order) const {
  return project_plus(on(grid)).truncated(order);
}

std::vector<cd> InnerFn::zeros() const {
  std::vector<cd> all(origin_power_, cd{});
  all.insert(all.end(), zeros_.begin(), zeros_.end());
  return all;
}

// ---------------------------------------------------------------------------

OuterFn OuterFn::power(double alpha) {
  OuterFn f;
  f.kind_ = Kind::Power;
  f.alpha_ = alpha;
  return f;
}

OuterFn OuterFn::rational(CVector numerator, CVector denominator) {
  if (denominator.size() == 0 || denominator[0] == cd{}) {
    throw Error(ErrorKind::DivisionBlowup, "rational outer function needs denominator(0) != 0");
  }
  OuterFn f;
  f.kind_ = Kind::Rational;
  f.numerator_ = std::move(numerator);
  f.denominator_ = std::move(denominator);
  return f;
}

OuterFn OuterFn::from_modulus(const BoundaryFunction& modulus) {
  auto outer = outer_from_modulus(modulus);
  OuterFn f;
  f.kind_ = Kind::FromModulus;
  f.taylor_ = std::move(outer.coeffs);
  f.boundary_ = std::make_shared<const BoundaryFunction>(std::move(outer.boundary));
  return f;
}

cd OuterFn::operator()(cd z) const {
  switch (kind_) {
    case Kind::Power: return std::exp(alpha_ * std::log(1.0 - z));
    case Kind::Rational: return polyval(numerator_, z) / polyval(denominator_, z);
    case Kind::FromModulus: return taylor_(z);
  }
  return {};
}

BoundaryFunction OuterFn::on(const Grid& grid) const {
  if (kind_ == Kind::FromModulus) {
    if (boundary_->grid() == grid) return *boundary_;
    return taylor_.truncated(std::min(taylor_.order(), grid.max_degree())).on(grid);
  }
  return BoundaryFunction::sample(grid, [this](cd z) { return (*this)(z); });
}

AnalyticFunction OuterFn::coefficients(std::size_t order) const {
  switch (kind_) {
    case Kind::Power: return AnalyticFunction(binomial_series(alpha_, order));
    case Kind::Rational: {
      CVector q = CVector::Zero(static_cast<Eigen::Index>(order + 1));
      for (std::size_t k = 0; k <= order; ++k) {
        cd acc = k < static_cast<std::size_t>(numerator_.size()) ? numerator_[static_cast<Eigen::Index>(k)] : cd{};
        for (std::size_t j = 1; j <= k && j < static_cast<std::size_t>(denominator_.size()); ++j) {
          acc -= denominator_[static_cast<Eigen::Index>(j)] * q[static_cast<Eigen::Index>(k - j)];
        }
        q[static_cast<Eigen::Index>(k)] = acc / denominator_[0];
      }
      return AnalyticFunction(std::move(q));
    }
    case Kind::FromModulus: return taylor_.truncated(order);
  }
  return {};
}

std::vector<long> OuterFn::winding_diagnostic() const {
  std::vector<long> w;
  for (double r : kDiagnosticRadii) w.push_back(winding_number([this](cd z) { return (*this)(z); }, r));
  return w;
}

bool OuterFn::passes_outer_diagnostic() const {
  const auto w = winding_diagnostic();
  return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
}

OuterFn power_outer(double alpha) { return OuterFn::power(alpha); }

CVector binomial_series(double beta, std::size_t order) {
  CVector c(static_cast<Eigen::Index>(order + 1));
  double v = 1.0;
  c[0] = v;
  for (std::size_t k = 1; k <= order; ++k) {
    v *= (static_cast<double>(k) - 1.0 - beta) / static_cast<double>(k);
    c[static_cast<Eigen::Index>(k)] = v;
  }
  return c;
}

AnalyticFunction cauchy_kernel(cd lambda, std::size_t order) {
  CVector c(static_cast<Eigen::Index>(order + 1));
  const cd w = std::conj(lambda);
  cd p = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    c[static_cast<Eigen::Index>(k)] = p;
    p *= w;
  }
  return AnalyticFunction(std::move(c));
}

Subspace model_space_basis(const InnerFn& inner, std::size_t m) {
  const auto& zeros = inner.nonzero_zeros();
  for (std::size_t i = 0; i < zeros.size(); ++i)
    for (std::size_t j = i + 1; j < zeros.size(); ++j)
      if (std::abs(zeros[i] - zeros[j]) < 1e-12) {
        throw Error(ErrorKind::RepeatedZeros, "repeated Blaschke zero requires derivative kernels");
      }
  const std::size_t dim = inner.origin_multiplicity() + zeros.size();
  CMatrix vectors = CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(dim));
  Eigen::Index col = 0;
  for (unsigned j = 0; j < inner.origin_multiplicity(); ++j, ++col) {
    if (j < m) vectors(j, col) = 1.0;
  }
  for (const cd& r : zeros) vectors.col(col++) = cauchy_kernel(r, m - 1).coeffs();
  return Subspace::span(vectors);
}

HelsonQuotient helson_quotient(const InnerFn& i1, const InnerFn& i2, const Grid& grid) {
  const BoundaryFunction a = i1.on(grid);
  const BoundaryFunction b = i2.on(grid);
  const BoundaryFunction diff = a - b;
  if (diff.min_abs() < kDivisionFloor) {
    throw Error(ErrorKind::DivisionBlowup, "|I1 - I2| = " + std::to_string(diff.min_abs()) + " at a node");
  }
  HelsonQuotient out{cd(0.0, 1.0) * ((a + b) / diff), 0.0, {}, false};
  out.max_imag = out.values.max_abs_imag();
  for (double r : kDiagnosticRadii) {
    out.difference_winding.push_back(winding_number([&](cd z) { return i1(z) - i2(z); }, r));
  }
  out.outer_warning =
      std::any_of(out.difference_winding.begin(), out.difference_winding.end(), [](long w) { return w != 0; });
  return out;
}

}  // namespace hardy
