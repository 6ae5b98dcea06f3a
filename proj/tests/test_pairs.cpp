#include <doctest.h>

#include <random>

#include "hardy/pairs.hpp"
#include "support.hpp"

using namespace hardy;
using testing::max_diff;
using testing::poly;

namespace {

cd b0(cd z) { return 0.5 * z * (1.0 - z); }
cd a0(cd z) { return 0.5 * (1.0 + z); }

const Grid& grid() {
  static const Grid g(4096);
  return g;
}

const Pair& base() {
  static const Pair p = Pair::from_closed_form(grid(), b0, a0, true);
  return p;
}

const HbSpace& base_space() {
  static const HbSpace s(base(), 512);
  return s;
}

AnalyticFunction sampled(const std::function<cd(cd)>& fn) { return project_plus(BoundaryFunction::sample(grid(), fn)); }

// (1 - conj(b(w)) b(z)) / (1 - conj(w) z), evaluated directly.
cd kernel_value(cd w, cd z) { return (1.0 - std::conj(b0(w)) * b0(z)) / (1.0 - std::conj(w) * z); }

void expect_kind(const std::function<void()>& fn, ErrorKind kind) {
  try {
    fn();
    FAIL("expected " << to_string(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("closed-form pairs are validated") {
  CHECK(base().identity_defect() < 1e-15);
  CHECK(base().sup_b() < 1.0);
  CHECK(std::abs(base().f().h2_norm() - 1.0) < 1e-12);
  CHECK(std::abs(base().herglotz_constant()) < 1e-15);
  expect_kind([] { Pair::from_closed_form(grid(), [](cd) { return cd(0.9); }, [](cd) { return cd(0.9); }, true); },
              ErrorKind::InvalidPair);
  expect_kind([] { Pair::from_closed_form(grid(), [](cd z) { return z; }, [](cd) { return cd(0.0); }, true); },
              ErrorKind::InvalidPair);
}

TEST_CASE("pair from the constant outer function") {
  const Pair p = pair_from_outer(AnalyticFunction::constant(1.0), grid());
  CHECK(p.b().h2_norm() < 1e-12);
  CHECK(std::abs(p.a().coeff(0) - 1.0) < 1e-12);
  CHECK(p.a().coeffs().tail(p.a().order()).norm() < 1e-12);
  CHECK(p.special());
}

TEST_CASE("pair from f0 recovers b0 and a") {
  const AnalyticFunction f0 = sampled([](cd z) { return a0(z) / (1.0 - b0(z)); });
  const Pair p = pair_from_outer(f0, grid());
  CHECK(max_diff(p.b().head(8), poly({0.0, 0.5, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0}).coeffs()) < 1e-6);
  CHECK(max_diff(p.a().head(8), poly({0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}).coeffs()) < 1e-6);
  CHECK(p.identity_defect() < 1e-8);
  CHECK(p.reconstruction_defect() < 1e-6);
}

TEST_CASE("pair from a Poisson-kernel modulus") {
  // |f|^2 = (3/4)/|1 - z/2|^2 is the Poisson kernel at r = 1/2, so the
  // Herglotz transform is (1 + z/2)/(1 - z/2), b = z/2 and a = sqrt(3)/2.
  const double c = std::sqrt(3.0) / 2.0;
  const AnalyticFunction f = sampled([c](cd z) { return c / (1.0 - 0.5 * z); });
  const Pair p = pair_from_outer(f, grid());
  CHECK(max_diff(p.b().head(6), poly({0.0, 0.5, 0.0, 0.0, 0.0, 0.0}).coeffs()) < 1e-12);
  CHECK(max_diff(p.a().head(6), poly({c, 0.0, 0.0, 0.0, 0.0, 0.0}).coeffs()) < 1e-12);
  CHECK(p.identity_defect() < 1e-8);
  CHECK(max_diff(p.f_boundary().values(), f.on(grid()).values()) < 1e-10);
}

TEST_CASE("pair_from_outer preconditions") {
  expect_kind([] { pair_from_outer(AnalyticFunction::constant(2.0), grid()); }, ErrorKind::NotUnitNorm);
  const double s = 1.0 / std::sqrt(1.25);
  expect_kind([s] { pair_from_outer(poly({-0.5 * s, s}), grid()); }, ErrorKind::OuterDiagnosticFailed);
}

TEST_CASE("F_lambda") {
  const FLambda f1 = f_lambda(base(), 1.0);
  CHECK(max_diff(f1.coeffs.head(64), base().f().head(64)) < 1e-14);
  CHECK(std::abs(f1.coeffs.h2_norm() - 1.0) < 1e-12);
  const FLambda fm = f_lambda(base(), -1.0);
  // 1 + b0 vanishes at z = -1, which is not a node.
  CHECK(fm.min_denominator > 1e-10);
  CHECK(fm.min_denominator < 1e-2);
  CHECK(std::isfinite(fm.boundary.max_abs()));
  const cd z(0.2, 0.3);
  CHECK(std::abs(fm.coeffs(z) - a0(z) / (1.0 + b0(z))) < 1e-12);
  expect_kind([] { f_lambda(base(), 0.5); }, ErrorKind::ConfigInvalid);
}

TEST_CASE("de Branges-Rovnyak kernels") {
  const AnalyticFunction k0 = dbr_kernel(base(), 0.0);
  CHECK(std::abs(k0.coeff(0) - 1.0) < 1e-15);
  CHECK(k0.truncated(20).coeffs().tail(20).norm() < 1e-15);
  for (cd w : {cd(0.3), cd(0.0, -0.5), cd(-0.8, 0.1)}) {
    const AnalyticFunction k = dbr_kernel(base(), w);
    for (cd z : {cd(0.5), cd(-0.3, 0.6)}) CHECK(std::abs(k(z) - kernel_value(w, z)) < 1e-12);
  }
  expect_kind([] { dbr_kernel(base(), 1.0); }, ErrorKind::ConfigInvalid);
}

TEST_CASE("H(b) construction preconditions") {
  const Pair plain = Pair::from_closed_form(grid(), b0, a0, false);
  expect_kind([&] { HbSpace(plain, 64); }, ErrorKind::NotSpecialPair);
  expect_kind([] { HbSpace(base(), 1025); }, ErrorKind::OrderTooLarge);
}

TEST_CASE("representers of kernels are explicit") {
  // V_b((1 - conj(b(w))) k_w) = k_w^b, carried as the preimage f q.
  for (cd w : {cd(0.0), cd(0.3), cd(0.0, -0.5)}) {
    const HbElement x = base_space().solve(dbr_kernel(base(), w));
    const AnalyticFunction q = (1.0 - std::conj(b0(w))) * sampled([w](cd z) { return 1.0 / (1.0 - std::conj(w) * z); });
    const AnalyticFunction u = sampled([&](cd z) { return a0(z) / (1.0 - b0(z)) * q(z); });
    CHECK(x.residual < 1e-12);
    CHECK(max_diff(x.preimage.head(512), u.head(512)) < 1e-10);
  }
}

TEST_CASE("kernel norms, reproducing property and backend agreement") {
  const HbSpace& s = base_space();
  const std::vector<AnalyticFunction> tests{AnalyticFunction::constant(1.0), AnalyticFunction::monomial(1),
                                            dbr_kernel(base(), 0.0), poly({0.0, 0.0, 0.5, 0.5})};
  for (cd w : {cd(0.0), cd(0.3), cd(0.0, -0.5)}) {
    const AnalyticFunction k = dbr_kernel(base(), w);
    const HbElement kx = s.solve(k);
    const double exact = (1.0 - std::norm(b0(w))) / (1.0 - std::norm(w));
    CHECK(std::abs(s.inner(kx, kx) - exact) < 1e-10);
    CHECK(std::abs(s.inner_plus(k, k) - exact) < 1e-10);
    for (const AnalyticFunction& h : tests) {
      const cd expected = h(w);
      CHECK(std::abs(s.inner(s.solve(h), kx) - expected) < 1e-6);
      CHECK(std::abs(s.inner_plus(h, k) - expected) < 1e-6);
    }
  }
}

TEST_CASE("the isometry from H2(|f|^2) onto H(b)") {
  const HbSpace& s = base_space();
  const BoundaryFunction weight = base().f_boundary().abs2();
  std::mt19937_64 rng(20240229);
  for (int trial = 0; trial < 4; ++trial) {
    const AnalyticFunction q = testing::random_poly(rng, 127);
    const AnalyticFunction u = multiply(base().f(), q, 511);
    const AnalyticFunction h = s.apply(u);
    const double lhs = std::sqrt(std::abs(s.inner_plus(h, h)));
    const double rhs = std::sqrt(weighted_inner(q, q, weight).real());
    CHECK(std::abs(lhs - rhs) < 1e-6 * rhs);
  }
}

TEST_CASE("high-degree monomials leave the truncated range") {
  const AnalyticFunction tail = AnalyticFunction::monomial(512);
  expect_kind([&] { base_space().solve(tail); }, ErrorKind::NotInRange);
  CHECK(base_space().represent(tail).residual > kNotInRangeTol);
}

TEST_CASE("monomial Gram matrix") {
  const HbSpace::MonomialGram g = base_space().monomial_gram(6);
  CHECK((g.gram - g.gram.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  // 1 = k_0^b because b(0) = 0, so its norm is k_0^b(0) = 1.
  CHECK(std::abs(g.gram(0, 0) - 1.0) < 1e-10);
  CHECK(Eigen::SelfAdjointEigenSolver<CMatrix>(g.gram).eigenvalues().minCoeff() > 0.0);
  CHECK(g.max_residual < 1e-10);
}

TEST_CASE("angular derivative test") {
  SUBCASE("holds at -1 for the base pair") {
    const AngularDerivativeReport r = angular_derivative_test(base(), -1.0);
    CHECK(r.verdict == AngularVerdict::Holds);
    CHECK(std::abs(r.norms[2] - r.norms[1]) < 1e-4 * r.norms[2]);
  }
  SUBCASE("fails at 1 for the base pair") {
    const AngularDerivativeReport r = angular_derivative_test(base(), 1.0);
    CHECK(r.verdict == AngularVerdict::Fails);
    CHECK(r.growth[0] > 1.5);
  }
  SUBCASE("fails everywhere for b = 0") {
    const Pair zero = Pair::from_closed_form(grid(), [](cd) { return cd(0.0); }, [](cd) { return cd(1.0); }, true);
    CHECK(angular_derivative_test(zero, std::polar(1.0, 0.9)).verdict == AngularVerdict::Fails);
  }
  CHECK(to_string(AngularVerdict::Inconclusive) == "inconclusive");
}

TEST_CASE("boundary values and boundary kernels") {
  CHECK(std::abs(radial_limit(base(), -1.0) + 1.0) < 1e-8);
  CHECK(std::abs(radial_limit(base(), cd(0.0, 1.0)) - b0(cd(0.0, 1.0))) < 1e-6);
  const BoundaryKernel k = boundary_kernel(base(), -1.0);
  CHECK(max_diff(k.kernel.head(8), poly({1.0, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}).coeffs()) < 1e-8);
  CHECK(k.test.verdict == AngularVerdict::Holds);
  const HbElement x = base_space().solve(k.kernel);
  CHECK(std::isfinite(base_space().norm(x)));
  expect_kind([] { boundary_kernel(base(), 1.0); }, ErrorKind::NoAngularDerivative);
}

TEST_CASE("the rank-one perturbation A_lambda") {
  const FLambda& f1 = base_space().f_lambda();
  SUBCASE("functions vanishing at the origin are shifted down") {
    const AnalyticFunction h = poly({0.0, 1.0, 2.0});
    CHECK(max_diff(a_lambda_apply(f1, h).head(4), poly({1.0, 2.0, 0.0, 0.0}).coeffs()) < 1e-15);
  }
  SUBCASE("F_lambda is annihilated") { CHECK(a_lambda_apply(f1, f1.coeffs).h2_norm() < 1e-14); }
  SUBCASE("F_1 k_{-1} is an eigenvector for -1") {
    const AnalyticFunction h = sampled([](cd z) { return 0.5 / (1.0 - b0(z)); });
    CHECK((a_lambda_apply(base(), 1.0, h) + h).h2_norm() < 1e-7 * h.h2_norm());
  }
  SUBCASE("a vanishing F_lambda(0) is rejected") {
    const FLambda bad{1.0, f1.boundary, AnalyticFunction::monomial(1), 0.0};
    expect_kind([&] { a_lambda_apply(bad, poly({1.0})); }, ErrorKind::OriginZero);
  }
}

TEST_CASE("complement of M(a) in H(b0)") {
  const ComplementResult c = ma_complement(base_space(), 32);
  REQUIRE(c.dim == 1);
  CHECK(c.dim_at_double == 1);
  CHECK_FALSE(c.degenerate);
  CVector k = CVector::Zero(static_cast<Eigen::Index>(c.functions.order()));
  k[0] = 1.0;
  k[1] = -0.5;
  CHECK(max_principal_angle(c.functions, Subspace::span(k)) < 1e-3);
  CHECK(std::is_sorted(c.cosines.begin(), c.cosines.end()));

  const ComplementResult full = ma_complement(base_space(), 0);
  CHECK(full.degenerate);
  expect_kind([] { ma_complement(base_space(), 257); }, ErrorKind::ConfigInvalid);
}

TEST_CASE("M(a) is dense for b = z/2") {
  const double c = std::sqrt(3.0) / 2.0;
  const Pair p = Pair::from_closed_form(grid(), [](cd z) { return 0.5 * z; }, [c](cd) { return cd(c); }, true);
  const HbSpace s(p, 256);
  CHECK(ma_complement(s, 32).dim == 0);
}

TEST_CASE("Y* eigenvector and intertwining") {
  CHECK(ystar_eigencheck(base_space(), -1.0, poly({1.0, -0.5})) < 1e-3);
  CHECK(ystar_eigencheck(base_space(), -1.0, poly({0.5, 0.5})) > 0.1);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 3; ++t) CHECK(intertwining_residual(base_space(), testing::random_poly(rng, 7)) < 1e-5);
}

TEST_CASE("multiplication by I is isometric from H(b0) into H(I b0)") {
  const InnerFn inner = InnerFn::monomial(1) * blaschke({cd(-0.5)});
  const Pair p = Pair::from_closed_form(grid(), [&](cd z) { return inner(z) * b0(z); }, a0, true);
  const HbSpace s(p, 1024);
  const BoundaryFunction ib = inner.on(grid());
  for (const AnalyticFunction& h : {poly({1.0, -0.5}), poly({0.0, 0.5, 0.5}), dbr_kernel(base(), 0.3)}) {
    const double n0 = base_space().norm(base_space().solve(h));
    const double n1 = s.norm(s.solve(project_plus(ib * h.on(grid()))));
    CHECK(std::abs(n1 - n0) < 1e-6 * n0);
  }
}
