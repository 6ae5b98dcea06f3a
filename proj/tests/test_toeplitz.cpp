#include <doctest.h>

#include <sstream>

#include "hardy/functions.hpp"
#include "hardy/toeplitz.hpp"
#include "support.hpp"

using namespace hardy;
using testing::max_diff;

namespace {

// Taylor coefficients of (1 - z)^beta z^shift, degrees 0..m-1.
CVector shifted_binomial(double beta, std::size_t shift, std::size_t m) {
  CVector c = CVector::Zero(static_cast<Eigen::Index>(m));
  double term = 1.0;
  for (std::size_t k = 0; k + shift < m; ++k) {
    c[static_cast<Eigen::Index>(k + shift)] = term;
    term *= (static_cast<double>(k) - beta) / static_cast<double>(k + 1);
  }
  return c;
}

BoundaryFunction power_symbol(double alpha, const Grid& g) {
  const BoundaryFunction gb = power_outer(alpha).on(g);
  return gb.conj() / gb;
}

Subspace columns(std::initializer_list<CVector> vs) {
  CMatrix m(vs.begin()->size(), static_cast<Eigen::Index>(vs.size()));
  Eigen::Index k = 0;
  for (const CVector& v : vs) m.col(k++) = v;
  return Subspace::span(m);
}

}  // namespace

TEST_CASE("constant and coanalytic symbols give identity and backward shift") {
  const Grid g(256);
  const ToeplitzMatrix id(BoundaryFunction::sample(g, [](cd) { return cd(1.0); }), 16);
  CHECK((id.dense() - CMatrix::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-15);

  const ToeplitzMatrix down(BoundaryFunction::sample(g, [](cd z) { return std::conj(z); }), 16);
  CMatrix expected = CMatrix::Zero(16, 16);
  for (int j = 0; j + 1 < 16; ++j) expected(j, j + 1) = 1.0;
  CHECK((down.dense() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("order is limited to a quarter of the grid") {
  const Grid g(256);
  const BoundaryFunction one = BoundaryFunction::sample(g, [](cd) { return cd(1.0); });
  CHECK_NOTHROW(ToeplitzMatrix(one, 64));
  try {
    ToeplitzMatrix(one, 65);
    FAIL("expected OrderTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderTooLarge);
  }
}

TEST_CASE("sections are exactly constant along diagonals") {
  const ToeplitzMatrix t(power_symbol(1.3, Grid(1024)), 64);
  const CMatrix d = t.dense();
  for (int j = 0; j + 1 < 64; ++j)
    for (int k = 0; k + 1 < 64; ++k) REQUIRE(d(j + 1, k + 1) == d(j, k));
}

TEST_CASE("dense and fast application agree with the analytic projection") {
  const Grid g(4096);
  const BoundaryFunction phi = BoundaryFunction::sample(g, [](cd z) { return std::conj(z) * (1.0 + 0.3 * z) / (1.0 - 0.4 * std::conj(z)); });
  const std::size_t m = 512;
  const ToeplitzMatrix t(phi, m);
  std::mt19937_64 rng(3);
  const AnalyticFunction h = testing::random_poly(rng, m / 2);
  const CVector oracle = project_plus(phi * h.on(g)).head(m);
  CHECK(max_diff(t.apply(h.head(m)), oracle) < 1e-9);
  CHECK(max_diff(t.apply_fast(h).head(m), oracle) < 1e-9);
}

TEST_CASE("unimodular symbols give contractive sections") {
  for (double alpha : {0.3, 1.0, 2.7}) {
    const ToeplitzMatrix t(power_symbol(alpha, Grid(2048)), 256);
    const KernelResult k = numerical_kernel(t);
    CHECK(k.singular_values.front() <= 1.0 + 1e-8);
  }
}

TEST_CASE("numerical kernel of the identity is trivial") {
  const KernelResult k = numerical_kernel(CMatrix(CMatrix::Identity(32, 32)));
  CHECK(k.kernel.dim() == 0);
  CHECK(k.singular_values.size() == 32);
}

TEST_CASE("kernel of T_{conj(z)^2} is spanned by 1 and z") {
  const Grid g(1024);
  const ToeplitzMatrix t(BoundaryFunction::sample(g, [](cd z) { return std::conj(z * z); }), 64);
  const KernelResult k = numerical_kernel(t);
  REQUIRE(k.kernel.dim() == 2);
  CHECK(k.kernel.orthonormality_defect() < 1e-10);
  CHECK(k.gap_ratio > 1e6);
  CHECK_FALSE(k.no_spectral_gap);
  const Subspace oracle = columns({shifted_binomial(0.0, 0, 64), shifted_binomial(0.0, 1, 64)});
  CHECK(max_principal_angle(k.kernel, oracle) < 1e-12);
}

TEST_CASE("power symbols at mid-interval exponents") {
  const Grid g(4096);
  SUBCASE("alpha = 0.3 is injective") {
    CHECK(numerical_kernel(ToeplitzMatrix(power_symbol(0.3, g), 512)).kernel.dim() == 0);
  }
  SUBCASE("alpha = 1 has the constants as kernel") {
    const KernelResult k = numerical_kernel(ToeplitzMatrix(power_symbol(1.0, g), 512));
    REQUIRE(k.kernel.dim() == 1);
    CHECK(max_principal_angle(k.kernel, columns({shifted_binomial(0.0, 0, 512)})) < 1e-3);
  }
  SUBCASE("alpha = 2 has the linear polynomials as kernel") {
    const KernelResult k = numerical_kernel(ToeplitzMatrix(power_symbol(2.0, g), 512));
    REQUIRE(k.kernel.dim() == 2);
    const Subspace oracle = columns({shifted_binomial(0.0, 0, 512), shifted_binomial(0.0, 1, 512)});
    CHECK(max_principal_angle(k.kernel, oracle) < 1e-3);
  }
}

TEST_CASE("kernel tolerance range is enforced") {
  const CMatrix a = CMatrix::Identity(4, 4);
  CHECK_THROWS_AS(numerical_kernel(a, 1e-13), Error);
  CHECK_THROWS_AS(numerical_kernel(a, 0.5), Error);
}

TEST_CASE("gap ratio is reported at the cut") {
  CMatrix a = CMatrix::Zero(4, 4);
  a.diagonal() << 1.0, 0.5, 2e-7, 1e-9;
  const KernelResult k = numerical_kernel(a, 1e-6);
  CHECK(k.kernel.dim() == 2);
  CHECK(k.gap_ratio == doctest::Approx(0.5 / 2e-7));
  CHECK_FALSE(k.no_spectral_gap);
  a.diagonal() << 1.0, 2e-6, 9e-7, 1e-9;
  CHECK(numerical_kernel(a, 1e-6).no_spectral_gap);
}

TEST_CASE("principal angles") {
  const CVector e0 = shifted_binomial(0.0, 0, 8);
  const CVector e1 = shifted_binomial(0.0, 1, 8);
  const Subspace a = columns({e0});
  const Subspace b = columns({e1});
  CHECK(max_principal_angle(a, a) < 1e-15);
  CHECK(max_principal_angle(a, b) == doctest::Approx(kPi / 2));

  CVector tilted = e0 * std::cos(0.3) + e1 * std::sin(0.3);
  const std::vector<double> angles = principal_angles(columns({e0, e1}), columns({tilted}));
  REQUIRE(angles.size() == 1);
  CHECK(angles[0] < 1e-14);
  CHECK(max_principal_angle(a, columns({tilted})) == doctest::Approx(0.3));

  const Subspace other = columns({shifted_binomial(0.0, 0, 6)});
  CHECK_THROWS_AS(principal_angles(a, other), Error);
}

TEST_CASE("subspace projection and residual") {
  const Subspace s = columns({shifted_binomial(0.0, 0, 4), shifted_binomial(0.0, 1, 4)});
  CVector v(4);
  v << 1.0, 2.0, 0.0, 2.0;
  CHECK(max_diff(s.project(v), (CVector(4) << 1.0, 2.0, 0.0, 0.0).finished()) < 1e-15);
  CHECK(s.residual(v) == doctest::Approx(2.0 / 3.0));
  CHECK(Subspace::zero(4).dim() == 0);
}

TEST_CASE("spectrum CSV format") {
  std::ostringstream out;
  write_spectrum_csv(out, {2.0, 0.5});
  CHECK(out.str() == "index,sigma\n0,2\n1,0.5\n");
}
