#include "hardy/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

namespace hardy {

namespace {

constexpr double kDenominatorFloor = 1e-10;
constexpr double kCauchyTol = 1e-4;
constexpr double kGrowthFactor = 1.5;
constexpr int kRadialExponent = 10;  // radii 1 - 2^{-10}, 1 - 2^{-11}, 1 - 2^{-12}
constexpr double kDiagnosticRadii[] = {0.5, 0.9, 0.99};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

AnalyticFunction monomial_times(const AnalyticFunction& g, std::size_t k, std::size_t max_order) {
  CVector c = CVector::Zero(static_cast<Eigen::Index>(max_order + 1));
  for (std::size_t j = 0; j <= g.order() && j + k <= max_order; ++j) c[static_cast<Eigen::Index>(j + k)] = g.coeff(j);
  return AnalyticFunction(std::move(c));
}

}  // namespace

// ---------------------------------------------------------------------------

Pair::Pair(Grid grid, BoundaryFunction b, BoundaryFunction a, bool special)
    : grid_(grid),
      b_boundary_(std::move(b)),
      a_boundary_(std::move(a)),
      f_boundary_(a_boundary_ / (cd(1.0) + cd(-1.0) * b_boundary_)),
      b_(project_plus(b_boundary_)),
      a_(project_plus(a_boundary_)),
      f_(project_plus(f_boundary_)),
      special_(special) {
  const CVector& bv = b_boundary_.values();
  const CVector& av = a_boundary_.values();
  for (Eigen::Index j = 0; j < bv.size(); ++j) {
    identity_defect_ = std::max(identity_defect_, std::abs(std::norm(av[j]) + std::norm(bv[j]) - 1.0));
  }
  sup_b_ = b_boundary_.max_abs();
  const cd b0 = b_.origin_value();
  herglotz_constant_ = ((1.0 + b0) / (1.0 - b0)).imag();
  if (!(identity_defect_ < kPairIdentityTol)) {
    throw Error(ErrorKind::InvalidPair, "|a|^2 + |b|^2 - 1 reaches " + fmt(identity_defect_));
  }
  if (!(sup_b_ < 1.0)) throw Error(ErrorKind::InvalidPair, "sup |b| = " + fmt(sup_b_) + " on the grid");
}

Pair Pair::from_closed_form(const Grid& grid, DiskFn b, DiskFn a, bool special) {
  Pair p(grid, BoundaryFunction::sample(grid, b), BoundaryFunction::sample(grid, a), special);
  p.b_fn_ = std::move(b);
  p.a_fn_ = std::move(a);
  return p;
}

cd Pair::b_at(cd z) const { return b_fn_ ? b_fn_(z) : b_(z); }
cd Pair::a_at(cd z) const { return a_fn_ ? a_fn_(z) : a_(z); }

Pair pair_from_outer(const AnalyticFunction& f, const Grid& grid) {
  const double norm = f.h2_norm();
  if (std::abs(norm - 1.0) > kUnitNormTol) throw Error(ErrorKind::NotUnitNorm, "||f||_2 = " + fmt(norm));
  for (double r : kDiagnosticRadii) {
    const long w = winding_number([&](cd z) { return f(z); }, r);
    if (w != 0) {
      throw Error(ErrorKind::OuterDiagnosticFailed,
                  "f winds " + std::to_string(w) + " times on |z| = " + std::to_string(r));
    }
  }
  const BoundaryFunction fb = f.on(grid);
  // Re H = |f|^2 exactly at the nodes, hence |a|^2 + |b|^2 = 1 to rounding.
  const BoundaryFunction h = analytic_completion(fb.abs2());
  const BoundaryFunction b = (cd(-1.0) + h) / (cd(1.0) + h);
  const BoundaryFunction a = fb * (cd(1.0) + cd(-1.0) * b);
  Pair p(grid, b, a, true);
  p.reconstruction_defect_ = (p.f_boundary_.abs() - fb.abs()).max_abs();
  return p;
}

// ---------------------------------------------------------------------------

FLambda f_lambda(const Pair& p, cd lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw Error(ErrorKind::ConfigInvalid, "lambda must be unimodular, |lambda| = " + fmt(std::abs(lambda)));
  }
  const BoundaryFunction denom = cd(1.0) + (-std::conj(lambda)) * p.b_boundary();
  const double floor = denom.min_abs();
  if (floor < kDenominatorFloor) {
    throw Error(ErrorKind::DenominatorVanishing, "min |1 - conj(lambda) b| = " + fmt(floor));
  }
  BoundaryFunction boundary = p.a_boundary() / denom;
  AnalyticFunction coeffs = project_plus(boundary);
  return FLambda{lambda, std::move(boundary), std::move(coeffs), floor};
}

AnalyticFunction kernel_series(const Pair& p, cd w, cd beta) {
  const std::size_t order = p.grid().max_degree();
  const cd cb = std::conj(beta);
  const cd cw = std::conj(w);
  CVector c(static_cast<Eigen::Index>(order + 1));
  cd prev = 0.0;
  for (std::size_t k = 0; k <= order; ++k) {
    const cd g = (k == 0 ? cd(1.0) : cd{}) - cb * p.b().coeff(k);
    prev = g + cw * prev;
    c[static_cast<Eigen::Index>(k)] = prev;
  }
  return AnalyticFunction(std::move(c));
}

AnalyticFunction dbr_kernel(const Pair& p, cd w) {
  if (std::abs(w) >= 1.0) throw Error(ErrorKind::ConfigInvalid, "kernel point must lie in the open disk");
  return kernel_series(p, w, p.b_at(w));
}

std::string_view to_string(AngularVerdict v) {
  switch (v) {
    case AngularVerdict::Holds: return "holds";
    case AngularVerdict::Fails: return "fails";
    case AngularVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AngularDerivativeReport angular_derivative_test(const Pair& p, cd z0, cd lambda) {
  const FLambda f = f_lambda(p, lambda);
  AngularDerivativeReport r;
  const std::size_t top = r.orders.back();
  const cd cz = std::conj(z0);
  std::array<double, 3> squared{};
  double acc = 0.0;
  cd prev = 0.0;
  std::size_t slot = 0;
  for (std::size_t k = 0; k < top; ++k) {
    prev = f.coeffs.coeff(k) + cz * prev;
    acc += std::norm(prev);
    if (k + 1 == r.orders[slot]) squared[slot++] = acc;
  }
  for (std::size_t i = 0; i < 3; ++i) r.norms[i] = std::sqrt(squared[i]);
  for (std::size_t i = 0; i < 2; ++i) r.growth[i] = squared[i] > 0.0 ? squared[i + 1] / squared[i] : 1.0;

  const auto cauchy = [&](std::size_t i) {
    return std::abs(r.norms[i + 1] - r.norms[i]) <= kCauchyTol * std::max(r.norms[i + 1], 1e-300);
  };
  if (cauchy(0) && cauchy(1)) {
    r.verdict = AngularVerdict::Holds;
  } else if (r.growth[0] > kGrowthFactor && r.growth[1] > kGrowthFactor) {
    r.verdict = AngularVerdict::Fails;
  } else {
    r.verdict = AngularVerdict::Inconclusive;
  }
  return r;
}

cd radial_limit(const Pair& p, cd z0) {
  std::array<cd, 3> v;
  for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = p.b_at((1.0 - std::ldexp(1.0, -(kRadialExponent + i))) * z0);
  const cd a0 = 2.0 * v[1] - v[0];
  const cd a1 = 2.0 * v[2] - v[1];
  return (4.0 * a1 - a0) / 3.0;
}

BoundaryKernel boundary_kernel(const Pair& p, cd z0) {
  BoundaryKernel out;
  out.test = angular_derivative_test(p, z0, 1.0);
  if (out.test.verdict != AngularVerdict::Holds) {
    throw Error(ErrorKind::NoAngularDerivative,
                "angular derivative test " + std::string(to_string(out.test.verdict)) + " at z0");
  }
  out.b_z0 = radial_limit(p, z0);
  out.kernel = kernel_series(p, z0, out.b_z0);
  return out;
}

AnalyticFunction a_lambda_apply(const FLambda& f, const AnalyticFunction& h) {
  const cd f0 = f.coeffs.origin_value();
  if (std::abs(f0) < 1e-14) throw Error(ErrorKind::OriginZero, "F_lambda(0) = 0");
  return h.shifted_down() - (h.origin_value() / f0) * f.coeffs.shifted_down();
}

AnalyticFunction a_lambda_apply(const Pair& p, cd lambda, const AnalyticFunction& h) {
  return a_lambda_apply(f_lambda(p, lambda), h);
}

// ---------------------------------------------------------------------------

HbSpace::HbSpace(Pair pair, std::size_t m, cd lambda)
    : pair_(std::move(pair)),
      m_(m),
      rows_(std::min(2 * m, pair_.grid().size() / 2)),
      f_(hardy::f_lambda(pair_, lambda)),
      left_symbol_(cd(1.0) + (-std::conj(lambda)) * pair_.b_boundary()) {
  if (!pair_.special()) throw Error(ErrorKind::NotSpecialPair, "H(b) model needs a special pair");
  if (m == 0 || m > pair_.grid().size() / 4) {
    throw Error(ErrorKind::OrderTooLarge, "order " + std::to_string(m) + " exceeds n/4");
  }
  const AnalyticFunction left = project_plus(left_symbol_);
  const CMatrix lower = analytic_toeplitz(left, rows_).leftCols(static_cast<Eigen::Index>(m));
  const CMatrix v = lower * coanalytic_toeplitz(f_.coeffs, m);
  qr_.compute(v);
}

AnalyticFunction HbSpace::apply(const AnalyticFunction& u) const {
  const Grid& g = pair_.grid();
  const AnalyticFunction inner = project_plus(f_.boundary.conj() * u.on(g));
  return project_plus(left_symbol_ * inner.on(g));
}

HbElement HbSpace::represent(const AnalyticFunction& h) const {
  const AnalyticFunction target = h.truncated(std::min(h.order(), pair_.grid().max_degree()));
  const CVector u = qr_.solve(target.head(rows_));
  HbElement x{target, AnalyticFunction(u), 0.0};
  const double nh = target.h2_norm();
  x.residual = nh > 0.0 ? (apply(x.preimage) - target).h2_norm() / nh : 0.0;
  return x;
}

HbElement HbSpace::solve(const AnalyticFunction& h) const {
  HbElement x = represent(h);
  if (x.residual > kNotInRangeTol) {
    throw Error(ErrorKind::NotInRange, "representer residual " + fmt(x.residual) + " at order " + std::to_string(m_));
  }
  return x;
}

HbElement HbSpace::from_preimage(const AnalyticFunction& u) const { return HbElement{apply(u), u, 0.0}; }

BoundaryFunction HbSpace::representer(const HbElement& x) const {
  return x.preimage.on(pair_.grid()) / f_.boundary;
}

cd HbSpace::inner(const HbElement& x, const HbElement& y) const {
  return weighted_inner(representer(x), representer(y), f_.boundary.abs2());
}

double HbSpace::norm(const HbElement& x) const { return std::sqrt(std::max(0.0, inner(x, x).real())); }

AnalyticFunction HbSpace::plus_function(const AnalyticFunction& x) const {
  const Grid& g = pair_.grid();
  const CVector rhs = project_plus(pair_.b_boundary().conj() * x.on(g)).head(m_);
  const CMatrix ta = coanalytic_toeplitz(pair_.a(), m_);
  return AnalyticFunction(CVector(ta.triangularView<Eigen::Upper>().solve(rhs)));
}

cd HbSpace::inner_plus(const AnalyticFunction& x, const AnalyticFunction& y) const {
  return h2_inner(x, y) + h2_inner(plus_function(x), plus_function(y));
}

HbSpace::MonomialGram HbSpace::monomial_gram(std::size_t count) const {
  MonomialGram out;
  out.preimages = CMatrix::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) {
    const HbElement x = solve(AnalyticFunction::monomial(k));
    out.preimages.col(static_cast<Eigen::Index>(k)) = x.preimage.head(m_);
    out.max_residual = std::max(out.max_residual, x.residual);
  }
  out.gram = out.preimages.adjoint() * out.preimages;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ComplementAt {
  std::size_t dim = 0;
  std::vector<double> cosines;
  CMatrix preimages;
  CMatrix functions;
};

ComplementAt complement_at(const HbSpace& space, std::size_t d, double tol) {
  const std::size_t m = space.order();
  const std::size_t top = space.pair().grid().max_degree();
  const auto md = static_cast<Eigen::Index>(d);
  CMatrix w(static_cast<Eigen::Index>(m), md);
  CMatrix ma(static_cast<Eigen::Index>(m), md);
  for (std::size_t k = 0; k < d; ++k) {
    w.col(static_cast<Eigen::Index>(k)) = space.solve(AnalyticFunction::monomial(k)).preimage.head(m);
    ma.col(static_cast<Eigen::Index>(k)) = space.solve(monomial_times(space.pair().a(), k, top)).preimage.head(m);
  }
  Eigen::HouseholderQR<CMatrix> wqr(w);
  const CMatrix qw = wqr.householderQ() * CMatrix::Identity(static_cast<Eigen::Index>(m), md);
  const CMatrix rw = wqr.matrixQR().topRows(md).triangularView<Eigen::Upper>();
  Eigen::HouseholderQR<CMatrix> mqr(ma);
  const CMatrix qm = mqr.householderQ() * CMatrix::Identity(static_cast<Eigen::Index>(m), md);

  Eigen::JacobiSVD<CMatrix> svd(qm.adjoint() * qw, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  ComplementAt out;
  for (Eigen::Index i = s.size() - 1; i >= 0; --i) out.cosines.push_back(s[i]);
  while (out.dim < d && out.cosines[out.dim] < tol) ++out.dim;
  const CMatrix directions = svd.matrixV().rightCols(static_cast<Eigen::Index>(out.dim));
  out.preimages = qw * directions;
  out.functions = CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(out.dim));
  out.functions.topRows(md) = rw.triangularView<Eigen::Upper>().solve(directions);
  return out;
}

}  // namespace

ComplementResult ma_complement(const HbSpace& space, std::size_t d, double tol) {
  const std::size_t m = space.order();
  ComplementResult out{d, 0, 0, false, {}, Subspace::zero(m), Subspace::zero(m)};
  if (d == 0) {
    const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    out.degenerate = true;
    out.dim = out.dim_at_double = m;
    out.preimages = Subspace(id, tol);
    out.functions = Subspace(id, tol);
    return out;
  }
  if (2 * d > m) {
    throw Error(ErrorKind::ConfigInvalid, "cutoff " + std::to_string(d) + " exceeds half the order " + std::to_string(m));
  }
  const ComplementAt base = complement_at(space, d, tol);
  const ComplementAt twice = complement_at(space, 2 * d, tol);
  out.dim = base.dim;
  out.dim_at_double = twice.dim;
  out.cosines = base.cosines;
  if (base.dim != twice.dim) {
    throw Error(ErrorKind::ComplementUnstable, "complement dimension " + std::to_string(base.dim) + " at d = " +
                                                   std::to_string(d) + " but " + std::to_string(twice.dim) +
                                                   " at 2d");
  }
  out.preimages = Subspace::span(base.preimages);
  out.functions = Subspace::span(base.functions);
  return out;
}

double ystar_eigencheck(const HbSpace& space, cd z0, const AnalyticFunction& candidate, std::size_t basis_size) {
  if (candidate.order() >= basis_size) {
    throw Error(ErrorKind::DimMismatch, "candidate degree exceeds the polynomial basis");
  }
  const auto n = static_cast<Eigen::Index>(basis_size);
  const auto gram = space.monomial_gram(basis_size + 1);
  const CMatrix g = gram.gram.topLeftCorner(n, n);
  const CVector x = candidate.head(basis_size);
  // <Y^* x, z^j>_b = <x, z^{j+1}>_b.
  const CVector rhs = gram.gram.block(1, 0, n, n) * x;
  const CVector y = g.ldlt().solve(rhs);
  const CVector e = y - std::conj(z0) * x;
  const double num = std::abs(e.dot(g * e));
  const double den = std::abs(x.dot(g * x));
  return std::sqrt(num / den);
}

double intertwining_residual(const HbSpace& space, const AnalyticFunction& q, std::size_t basis_size) {
  const auto n = static_cast<Eigen::Index>(basis_size);
  const std::size_t m = space.order();
  const auto gram = space.monomial_gram(basis_size + 1);
  const AnalyticFunction unit = (1.0 / q.h2_norm()) * q;
  const CVector aq = a_lambda_apply(space.f_lambda(), unit).head(m);
  const CVector qh = unit.head(m);
  // <T A q, z^j>_b - <Y^* T q, z^j>_b = <A q, u_j> - <q, u_{j+1}>.
  const CVector d = gram.preimages.leftCols(n).adjoint() * aq - gram.preimages.middleCols(1, n).adjoint() * qh;
  const CMatrix g = gram.gram.topLeftCorner(n, n);
  return std::sqrt(std::abs(d.dot(g.ldlt().solve(d))));
}

}  // namespace hardy
