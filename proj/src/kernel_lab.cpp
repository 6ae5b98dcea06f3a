#include "hardy/kernel_lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include <Eigen/QR>

#include "hardy/toeplitz.hpp"

namespace hardy {

namespace {

constexpr double kEndpointMargin = 0.1;
constexpr double kSymbolIdentityTol = 1e-8;
constexpr double kAngleTol = 1e-3;
constexpr double kIdentityTol = 1e-7;
constexpr double kMembershipTol = 1e-6;
constexpr double kNonDegeneracy = 0.01;
constexpr double kWitnessTol = 1e-6;
constexpr double kYstarTol = 1e-3;
constexpr double kYstarNonEigen = 0.1;
constexpr double kIntertwiningTol = 1e-5;
constexpr double kHbTol = 1e-6;
constexpr double kFftTol = 1e-12;
constexpr double kProjectionTol = 1e-10;
constexpr double kUnimodularTol = 1e-10;
constexpr std::size_t kFineGrid = std::size_t{1} << 16;
constexpr std::size_t kMaxResolvingGrid = std::size_t{1} << 20;
constexpr double kResolutionTol = 1e-14;
constexpr std::size_t kYstarBasis = 64;
constexpr int kIntertwiningTrials = 10;
constexpr std::size_t kRandomDegree = 8;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string num(cd z) {
  if (z.imag() == 0.0) return num(z.real());
  if (z.real() == 0.0) return num(z.imag()) + "i";
  return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i";
}

template <class T, class Fn>
std::string join(const std::vector<T>& xs, Fn&& show) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += show(xs[i]);
  }
  return out;
}

void echo_common(ScenarioReport& r, const LabConfig& cfg) {
  r.param("n", std::to_string(cfg.n));
  r.param("m", std::to_string(cfg.m));
  r.param("tol", num(cfg.tol));
  r.param("seed", std::to_string(cfg.seed));
}

/// T_{1-b} T_{conj(f)} u evaluated at the nodes.
BoundaryFunction isometry_on_grid(const Pair& p, const BoundaryFunction& u) {
  const Grid& g = p.grid();
  const AnalyticFunction inner = project_plus(p.f_boundary().conj() * u);
  const BoundaryFunction left = cd(1.0) + cd(-1.0) * p.b_boundary();
  return project_plus(left * inner.on(g)).on(g);
}

// Doubles n until every function's analytic coefficients in the upper half
// of the band have decayed below kResolutionTol times its sup norm. With
// several Blaschke zeros close to -1, f and g peak on a short arc there and
// the default grid aliases badly.
struct Resolution {
  std::size_t n;
  bool resolved;
};

Resolution resolving_size(std::size_t n, const std::vector<DiskFn>& fns) {
  for (;; n *= 2) {
    const Grid grid(n);
    bool resolved = true;
    for (const DiskFn& fn : fns) {
      const BoundaryFunction s = BoundaryFunction::sample(grid, fn);
      const CVector& c = s.coefficients();
      const double tail = c.segment(static_cast<Eigen::Index>(n / 4), static_cast<Eigen::Index>(n / 4)).cwiseAbs().maxCoeff();
      resolved = resolved && tail <= kResolutionTol * s.max_abs();
    }
    if (resolved || n >= kMaxResolvingGrid) return {n, resolved};
  }
}

Subspace times_f(const Subspace& basis, const AnalyticFunction& f) {
  const std::size_t m = basis.order();
  CMatrix cols(basis.basis().rows(), basis.basis().cols());
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    cols.col(j) = multiply(AnalyticFunction(CVector(basis.basis().col(j))), f, m - 1).coeffs();
  }
  return Subspace::span(cols);
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

// ---------------------------------------------------------------------------

void LabConfig::validate() const {
  if (n < 64 || (n & (n - 1)) != 0) throw Error(ErrorKind::ConfigInvalid, "n must be a power of two >= 64");
  if (m == 0 || m > n / 4) throw Error(ErrorKind::ConfigInvalid, "m must satisfy 1 <= m <= n/4");
  if (!(tol >= 1e-12 && tol <= 1e-2)) throw Error(ErrorKind::ConfigInvalid, "tol must lie in [1e-12, 1e-2]");
  if (d == 0) throw Error(ErrorKind::ConfigInvalid, "d must be positive");
  if (alphas.empty()) throw Error(ErrorKind::ConfigInvalid, "alpha list is empty");
  if (blaschke && blaschke->empty()) throw Error(ErrorKind::ConfigInvalid, "Blaschke count list is empty");
  for (const cd& l : lambdas) {
    if (std::abs(l) >= 1.0) throw Error(ErrorKind::ConfigInvalid, "lambda " + num(l) + " is outside the open disk");
  }
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::Greater: return ">";
    case Relation::AtLeast: return ">=";
    case Relation::Equal: return "==";
  }
  return "?";
}

std::string_view verdict(const Check& c) {
  if (!c.asserted) return "report-only";
  return c.passed ? "pass" : "fail";
}

void ScenarioReport::add(const std::string& name, double value, double threshold, Relation rel, bool asserted) {
  Check c{name, value, threshold, rel, asserted, true};
  if (asserted) {
    switch (rel) {
      case Relation::Less: c.passed = value < threshold; break;
      case Relation::Greater: c.passed = value > threshold; break;
      case Relation::AtLeast: c.passed = value >= threshold; break;
      case Relation::Equal: c.passed = value == threshold; break;
    }
  }
  checks_.push_back(std::move(c));
}

void ScenarioReport::assert_less(const std::string& name, double value, double threshold) {
  add(name, value, threshold, Relation::Less, true);
}
void ScenarioReport::assert_greater(const std::string& name, double value, double threshold) {
  add(name, value, threshold, Relation::Greater, true);
}
void ScenarioReport::assert_at_least(const std::string& name, double value, double threshold) {
  add(name, value, threshold, Relation::AtLeast, true);
}
void ScenarioReport::assert_equal(const std::string& name, double value, double expected) {
  add(name, value, expected, Relation::Equal, true);
}
void ScenarioReport::report(const std::string& name, double value) {
  add(name, value, std::numeric_limits<double>::quiet_NaN(), Relation::Less, false);
}

bool ScenarioReport::passed() const { return failures() == 0; }

std::size_t ScenarioReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return c.asserted && !c.passed; }));
}

const Check* ScenarioReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------

void record_pair_properties(ScenarioReport& r, const std::string& label, const Pair& p) {
  r.assert_less("property.pair_identity." + label, p.identity_defect(), kPairIdentityTol);
}

void record_inner_properties(ScenarioReport& r, const std::string& label, const InnerFn& inner, const Grid& grid) {
  const BoundaryFunction v = inner.on(grid);
  double defect = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) defect = std::max(defect, std::abs(std::abs(v[j]) - 1.0));
  r.assert_less("property.blaschke_unimodular." + label, defect, kUnimodularTol);
}

void record_fft_properties(ScenarioReport& r, const std::string& label, const BoundaryFunction& v) {
  const Grid& grid = v.grid();
  const double scale = std::max(1.0, v.max_abs());
  const BoundaryFunction back = BoundaryFunction::synthesize(grid, v.coefficients());
  r.assert_less("property.fft_roundtrip." + label, (back - v).max_abs() / scale, kFftTol);

  const AnalyticFunction p = project_plus(v);
  const AnalyticFunction pp = project_plus(p.on(grid));
  r.assert_less("property.projection_idempotent." + label, (pp - p).h2_norm() / std::max(1.0, p.h2_norm()),
                kProjectionTol);

  const BoundaryFunction u =
      BoundaryFunction::sample(grid, [](cd z) { return std::conj(z) * std::conj(z) + 0.5 * z + 1.0 / (1.0 - 0.3 * z); });
  const cd lhs = grid_inner(p.on(grid), u);
  const cd rhs = grid_inner(v, project_plus(u).on(grid));
  const double norms = std::sqrt(v.l2_norm_squared() * u.l2_norm_squared());
  r.assert_less("property.projection_selfadjoint." + label, std::abs(lhs - rhs) / std::max(norms, 1e-300),
                kProjectionTol);
}

// ---------------------------------------------------------------------------

FourData four_data(unsigned blaschke) {
  FourData d;
  d.blaschke = blaschke;
  std::vector<cd> zeros;
  for (unsigned k = 1; k <= blaschke; ++k) {
    const double r = -(1.0 - std::ldexp(1.0, -static_cast<int>(k)));
    d.zeros.push_back(r);
    zeros.emplace_back(r);
  }
  d.inner = InnerFn::monomial(1) * InnerFn::blaschke(zeros);
  const InnerFn inner = d.inner;
  d.a = [](cd z) { return 0.5 * (1.0 + z); };
  d.b0 = [](cd z) { return 0.5 * z * (1.0 - z); };
  d.b = [inner](cd z) { return inner(z) * 0.5 * z * (1.0 - z); };
  d.f = [inner](cd z) { return 0.5 * (1.0 + z) / (1.0 - inner(z) * 0.5 * z * (1.0 - z)); };
  d.g = [inner](cd z) {
    const cd i = inner(z);
    return 0.5 * (1.0 + i) / (1.0 - i * 0.5 * z * (1.0 - z));
  };
  return d;
}

Pair four_pair(const FourData& data, const Grid& grid) { return Pair::from_closed_form(grid, data.b, data.a, true); }

Pair base_pair(const Grid& grid) {
  return Pair::from_closed_form(
      grid, [](cd z) { return 0.5 * z * (1.0 - z); }, [](cd z) { return 0.5 * (1.0 + z); }, true);
}

std::size_t predicted_dimension(double alpha) {
  if (!(alpha > -0.5)) throw Error(ErrorKind::ConfigInvalid, "alpha must exceed -1/2");
  const double half = std::round(alpha - 0.5) + 0.5;
  if (std::abs(alpha - half) < kEndpointMargin - 1e-9) {
    throw Error(ErrorKind::EndpointAlpha,
                "alpha " + num(alpha) + " lies within " + num(kEndpointMargin) + " of the endpoint " + num(half));
  }
  return static_cast<std::size_t>(std::max(0.0, std::ceil(alpha - 0.5)));
}

// ---------------------------------------------------------------------------

ScenarioReport sweep_alpha(const LabConfig& cfg) {
  ScenarioReport r("sweep-alpha");
  echo_common(r, cfg);
  r.param("alphas", join(cfg.alphas, [](double a) { return num(a); }));
  std::vector<std::size_t> predicted;
  for (double a : cfg.alphas) predicted.push_back(predicted_dimension(a));

  const Grid grid(cfg.n);
  const std::size_t orders[] = {cfg.m / 2, cfg.m};
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
    const double alpha = cfg.alphas[i];
    const std::size_t dim = predicted[i];
    const std::string label = "alpha=" + num(alpha);
    const BoundaryFunction g = power_outer(alpha).on(grid);
    const BoundaryFunction symbol = g.conj() / g;
    record_fft_properties(r, "symbol." + label, symbol);

    for (std::size_t order : orders) {
      if (order == 0) continue;
      const std::string at = label + ".m=" + std::to_string(order);
      const KernelResult kr = numerical_kernel(ToeplitzMatrix(symbol, order), cfg.tol);
      r.assert_equal(at + ".dim", static_cast<double>(kr.kernel.dim()), static_cast<double>(dim));
      r.assert_at_least(at + ".gap_ratio", kr.gap_ratio, kMinGapRatio);
      r.metric(at + ".sigma_min", kr.singular_values.back());
      if (dim > 0) {
        CMatrix oracle(static_cast<Eigen::Index>(order), static_cast<Eigen::Index>(dim));
        const CVector base = binomial_series(alpha - static_cast<double>(dim), order - 1);
        for (std::size_t j = 0; j < dim; ++j) {
          CVector shifted = CVector::Zero(static_cast<Eigen::Index>(order));
          shifted.tail(static_cast<Eigen::Index>(order - j)) = base.head(static_cast<Eigen::Index>(order - j));
          oracle.col(static_cast<Eigen::Index>(j)) = shifted;
        }
        const double angle =
            kr.kernel.dim() == dim ? max_principal_angle(kr.kernel, Subspace::span(oracle)) : kPi / 2.0;
        r.assert_less(at + ".max_principal_angle", angle, kAngleTol);
      }
      if (order == cfg.m) r.spectrum("sigma." + label, kr.singular_values);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void theorem1_instance(ScenarioReport& r, const LabConfig& cfg, const std::string& label, const InnerFn& inner,
                       const InnerFn& i1, const InnerFn& i2, const BoundaryFunction& f, const AnalyticFunction& f_coeffs) {
  const Grid& grid = f.grid();
  record_inner_properties(r, label + ".I", inner, grid);
  record_inner_properties(r, label + ".I1", i1, grid);
  record_inner_properties(r, label + ".I2", i2, grid);

  const HelsonQuotient hq = helson_quotient(i1, i2, grid);
  r.assert_less(label + ".helson_quotient_imag", hq.max_imag, kSymbolIdentityTol);
  r.report(label + ".difference_not_outer", hq.outer_warning ? 1.0 : 0.0);

  const BoundaryFunction ib = inner.on(grid);
  const BoundaryFunction g = hq.values * (cd(1.0) + ib) * f;
  if (g.min_abs() < 1e-12 * g.max_abs()) {
    throw Error(ErrorKind::SymbolSingular, "g vanishes at a node for " + label);
  }
  const BoundaryFunction symbol = g.conj() / g;
  const BoundaryFunction target = ib.conj() * f.conj() / f;
  r.assert_less(label + ".symbol_identity", (symbol - target).max_abs(), kSymbolIdentityTol);
  record_fft_properties(r, label + ".symbol", symbol);

  const KernelResult kr = numerical_kernel(ToeplitzMatrix(symbol, cfg.m), cfg.tol);
  const Subspace expected = times_f(model_space_basis(inner, cfg.m), f_coeffs);
  r.assert_equal(label + ".kernel_dim", static_cast<double>(kr.kernel.dim()), static_cast<double>(expected.dim()));
  const double angle = kr.kernel.dim() == expected.dim() ? max_principal_angle(kr.kernel, expected) : kPi / 2.0;
  r.assert_less(label + ".max_principal_angle", angle, kAngleTol);
  r.metric(label + ".gap_ratio", kr.gap_ratio);
  r.spectrum("sigma." + label, kr.singular_values);
}

}  // namespace

ScenarioReport theorem1_check(const LabConfig& cfg) {
  ScenarioReport r("theorem1");
  echo_common(r, cfg);
  const Grid grid(cfg.n);
  const InnerFn z = InnerFn::monomial(1);
  const InnerFn z2 = InnerFn::monomial(2);
  const InnerFn minus_one = InnerFn::constant(-1.0);
  const BoundaryFunction one = BoundaryFunction::sample(grid, [](cd) { return cd(1.0); });

  theorem1_instance(r, cfg, "f=1.I=z^2", z2, z, minus_one, one, AnalyticFunction::constant(1.0));
  theorem1_instance(r, cfg, "f=1.I=z", z, z2, minus_one, one, AnalyticFunction::constant(1.0));

  // f = (sqrt(3)/2) / (1 - z^2/2): the pair (z^2/2, sqrt(3)/2) factors as I b0 with
  // I = z and b0 = z/2, whose f0 is invertible in H^infinity.
  const double c = std::sqrt(3.0) / 2.0;
  CVector fc = CVector::Zero(static_cast<Eigen::Index>(grid.max_degree() + 1));
  for (Eigen::Index k = 0; 2 * k < fc.size(); ++k) fc[2 * k] = c * std::pow(0.5, static_cast<double>(k));
  const AnalyticFunction f(fc);
  const Pair p = pair_from_outer(f, grid);
  record_pair_properties(r, "f=b0/2.pair", p);
  r.metric("f=b0/2.pair.b_error", (p.b() - AnalyticFunction(CVector{{cd{}, cd{}, cd(0.5)}})).h2_norm());
  r.metric("f=b0/2.pair.a_error", (p.a() - AnalyticFunction::constant(c)).h2_norm());
  theorem1_instance(r, cfg, "f=b0/2.I=z", z, z, minus_one, p.f_boundary(), p.f());
  return r;
}

// ---------------------------------------------------------------------------

ScenarioReport lemma_hss_check(const LabConfig& cfg) {
  ScenarioReport r("lemma-hss");
  echo_common(r, cfg);
  const std::vector<unsigned> counts = cfg.blaschke.value_or(std::vector<unsigned>{1});
  r.param("blaschke", join(counts, [](unsigned c) { return std::to_string(c); }));
  r.param("lambdas", join(cfg.lambdas, [](cd l) { return num(l); }));

  for (unsigned count : counts) {
    const FourData data = four_data(count);
    const std::string base = "blaschke=" + std::to_string(count);
    for (const cd& lambda : cfg.lambdas) {
      const std::string label = base + ".lambda=" + num(lambda);
      const cd bl = data.b(lambda);
      const cd b0l = data.b0(lambda);
      double worst_i = 0.0, worst_ii = 0.0;
      for (std::size_t n : {cfg.n, 2 * cfg.n}) {
        const Grid grid(n);
        const BoundaryFunction w = BoundaryFunction::sample(grid, data.f).abs2();
        const BoundaryFunction ib = data.inner.on(grid);
        const BoundaryFunction k = BoundaryFunction::sample(grid, [&](cd z) { return 1.0 / (1.0 - std::conj(lambda) * z); });
        const BoundaryFunction right_i = BoundaryFunction::sample(grid, [&](cd z) {
          const cd kz = 1.0 / (1.0 - std::conj(lambda) * z);
          return data.inner(z) * kz / (1.0 - data.b(z)) + std::conj(b0l) * kz / (1.0 - std::conj(bl));
        });
        const BoundaryFunction right_ii = BoundaryFunction::sample(grid, [&](cd z) {
          const cd kz = 1.0 / (1.0 - std::conj(lambda) * z);
          return kz / (1.0 - data.b(z)) + std::conj(bl) * kz / (1.0 - std::conj(bl));
        });
        const double err_i = (project_plus(w * ib * k).on(grid) - right_i).max_abs();
        const double err_ii = (project_plus(w * k).on(grid) - right_ii).max_abs();
        r.metric(label + ".n=" + std::to_string(n) + ".identity_i", err_i);
        r.metric(label + ".n=" + std::to_string(n) + ".identity_ii", err_ii);
        worst_i = std::max(worst_i, err_i);
        worst_ii = std::max(worst_ii, err_ii);
      }
      r.assert_less(label + ".identity_i", worst_i, kIdentityTol);
      r.assert_less(label + ".identity_ii", worst_ii, kIdentityTol);
    }
    const Grid grid(cfg.n);
    record_pair_properties(r, base + ".pair", four_pair(data, grid));
    record_inner_properties(r, base + ".I", data.inner, grid);
    record_fft_properties(r, base + ".f", BoundaryFunction::sample(grid, data.f));
  }
  return r;
}

// ---------------------------------------------------------------------------

ScenarioReport example_s4(const LabConfig& cfg) {
  ScenarioReport r("example-s4");
  echo_common(r, cfg);
  const std::vector<unsigned> counts = cfg.blaschke.value_or(std::vector<unsigned>{1, 4});
  r.param("blaschke", join(counts, [](unsigned c) { return std::to_string(c); }));
  const std::vector<cd> lambdas{cd(0.0), cd(0.3), cd(-0.4)};
  r.param("remark_lambdas", join(lambdas, [](cd l) { return num(l); }));

  for (unsigned count : counts) {
    const FourData data = four_data(count);
    const std::string base = "blaschke=" + std::to_string(count);
    const Resolution res = resolving_size(cfg.n, {data.f, data.g});
    const Grid grid(res.n);
    r.param(base + ".quadrature_grid", std::to_string(res.n));
    r.param(base + ".quadrature_resolved", res.resolved ? "true" : "false");
    const Pair pair = four_pair(data, grid);
    record_pair_properties(r, base + ".pair", pair);
    record_inner_properties(r, base + ".I", data.inner, grid);

    const BoundaryFunction f = BoundaryFunction::sample(grid, data.f);
    const BoundaryFunction ib = data.inner.on(grid);
    const BoundaryFunction g = BoundaryFunction::sample(grid, data.g);
    const BoundaryFunction phi = ib.conj() * f.conj() / f;
    record_fft_properties(r, base + ".g", g);
    r.metric(base + ".f_norm", std::sqrt(f.l2_norm_squared()));
    r.metric(base + ".min_abs_1_minus_b", (cd(1.0) + cd(-1.0) * pair.b_boundary()).min_abs());

    const double gnorm = std::sqrt(g.l2_norm_squared());
    r.assert_less(base + ".membership", project_plus(phi * g).h2_norm() / gnorm, kMembershipTol);

    std::array<double, 4> worst{};
    for (double rn : data.zeros) {
      const cd b0r = data.b0(rn);
      const BoundaryFunction kr = BoundaryFunction::sample(grid, [&](cd z) { return 1.0 / (1.0 - rn * z); });
      const BoundaryFunction x1 = f * kr * ib;
      const BoundaryFunction x2 = (-b0r) * (f * kr);
      for (const cd& lambda : lambdas) {
        const BoundaryFunction kl =
            BoundaryFunction::sample(grid, [&](cd z) { return 1.0 / (1.0 - std::conj(lambda) * z); });
        const cd il = data.inner(lambda);
        const cd bl = data.b(lambda);
        const cd krl = 1.0 / (1.0 - rn * lambda);
        const BoundaryFunction y1 = f * kl;
        const BoundaryFunction y2 = (-std::conj(il)) * (f * ib * kl);
        const std::array<cd, 4> quad{grid_inner(x1, y1), grid_inner(x1, y2), grid_inner(x2, y1), grid_inner(x2, y2)};
        const std::array<cd, 4> formula{il * krl / (1.0 - bl) + std::conj(b0r) * krl, -il * krl / (1.0 - bl),
                                        -b0r * krl / (1.0 - bl), b0r * bl * krl / (1.0 - bl)};
        for (std::size_t i = 0; i < 4; ++i) worst[i] = std::max(worst[i], std::abs(quad[i] - formula[i]));
      }
    }
    for (std::size_t i = 0; i < 4; ++i) {
      r.assert_less(base + ".remark_inner_product_" + std::to_string(i + 1), worst[i], kIdentityTol);
    }

    double kr_error = 0.0;
    for (double rn : data.zeros) {
      const double b0r = data.b0(rn).real();
      const BoundaryFunction u = BoundaryFunction::sample(
          grid, [&](cd z) { return data.f(z) / (1.0 - rn * z) * (data.inner(z) - b0r); });
      const BoundaryFunction rhs = BoundaryFunction::sample(
          grid, [&](cd z) { return data.inner(z) / (1.0 - rn * z) * (1.0 - b0r * data.b0(z)); });
      kr_error = std::max(kr_error, (isometry_on_grid(pair, u) - rhs).max_abs());
    }
    r.assert_less(base + ".kernel_identity", kr_error, kIdentityTol);

    // Least-squares distance from g to f K_I, with K_I spanned by 1 and k_{r_n}.
    CMatrix samples(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(count + 1));
    samples.col(0) = f.values();
    for (unsigned k = 0; k < count; ++k) {
      const double rn = data.zeros[k];
      samples.col(static_cast<Eigen::Index>(k + 1)) =
          (f * BoundaryFunction::sample(grid, [&](cd z) { return 1.0 / (1.0 - rn * z); })).values();
    }
    const CVector coeffs = samples.colPivHouseholderQr().solve(g.values());
    const double orth = (g.values() - samples * coeffs).norm() / g.values().norm();
    r.assert_greater(base + ".orthogonal_component", orth, kNonDegeneracy);

    const KernelResult kr = numerical_kernel(ToeplitzMatrix(phi, cfg.m), cfg.tol);
    r.report(base + ".kernel_dim", static_cast<double>(kr.kernel.dim()));
    r.report(base + ".model_dim_plus_one", static_cast<double>(count + 2));
    r.report(base + ".kernel_gap_ratio", kr.gap_ratio);
    r.spectrum("sigma." + base, kr.singular_values);
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

AnalyticFunction polynomial(std::initializer_list<cd> c) {
  CVector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (const cd& x : c) v[i++] = x;
  return AnalyticFunction(std::move(v));
}

void hb_property_checks(ScenarioReport& r, const HbSpace& s) {
  const Pair& p = s.pair();
  const std::vector<cd> points{cd(0.0), cd(0.3), cd(0.0, -0.5)};
  const std::vector<std::pair<std::string, AnalyticFunction>> tests{
      {"1", AnalyticFunction::constant(1.0)},
      {"z", AnalyticFunction::monomial(1)},
      {"k0", dbr_kernel(p, 0.0)},
      {"az^2", polynomial({0.0, 0.0, 0.5, 0.5})}};
  double repro = 0.0;
  double backend = 0.0;
  for (const cd& w : points) {
    const AnalyticFunction k = dbr_kernel(p, w);
    const HbElement kx = s.solve(k);
    const double kk = (1.0 - std::norm(p.b_at(w))) / (1.0 - std::norm(w));
    repro = std::max(repro, std::abs(s.inner(kx, kx) - kk));
    for (const auto& [name, h] : tests) {
      const HbElement hx = s.solve(h);
      const cd a = s.inner(hx, kx);
      const cd b = s.inner_plus(h, k);
      repro = std::max(repro, std::abs(a - h(w)));
      // Relative to the Cauchy-Schwarz bound; h(w) itself may vanish.
      backend = std::max(backend, std::abs(a - b) / (s.norm(hx) * s.norm(kx)));
    }
  }
  r.assert_less("hb.reproducing_property", repro, kHbTol);
  r.assert_less("hb.backend_agreement", backend, kHbTol);
}

/// ||k_r^{b0} - k_{-1}^{b0}||_{b0} through the closed-form preimages
/// (1 - conj(b0(w))) f0 k_w on a fine grid.
double kernel_distance(double rr, const Grid& grid) {
  const auto b0 = [](cd z) { return 0.5 * z * (1.0 - z); };
  const auto f0 = [&](cd z) { return 0.5 * (1.0 + z) / (1.0 - b0(z)); };
  const cd c = 1.0 - std::conj(b0(rr));
  const BoundaryFunction diff =
      BoundaryFunction::sample(grid, [&](cd z) { return c * f0(z) / (1.0 - rr * z) - 1.0 / (1.0 - b0(z)); });
  return std::sqrt(diff.l2_norm_squared());
}

}  // namespace

ScenarioReport complement_s5(const LabConfig& cfg) {
  if (cfg.d < 16) throw Error(ErrorKind::ConfigInvalid, "complement cutoff d must be at least 16");
  ScenarioReport r("complement-s5");
  echo_common(r, cfg);
  r.param("d", std::to_string(cfg.d));
  r.param("ystar_basis", std::to_string(kYstarBasis));

  const Grid grid(cfg.n);
  const Pair pair = base_pair(grid);
  record_pair_properties(r, "b0", pair);
  record_fft_properties(r, "f0", pair.f_boundary());
  const HbSpace space(pair, cfg.m);
  const AnalyticFunction k_minus = polynomial({1.0, -0.5});

  const ComplementResult comp = ma_complement(space, cfg.d, cfg.tol);
  r.assert_equal("complement.dim", static_cast<double>(comp.dim), 1.0);
  r.report("complement.dim_at_2d", static_cast<double>(comp.dim_at_double));
  r.report("complement.smallest_cosine", comp.cosines.empty() ? 0.0 : comp.cosines.front());
  const double angle = comp.dim == 1 ? max_principal_angle(comp.functions, Subspace::span(k_minus.head(cfg.m)))
                                     : kPi / 2.0;
  r.assert_less("complement.principal_angle", angle, kAngleTol);

  const BoundaryKernel bk = boundary_kernel(pair, -1.0);
  r.assert_less("boundary_kernel.error", (bk.kernel - k_minus).h2_norm(), 1e-8);
  const HbElement kx = space.solve(bk.kernel);
  r.report("boundary_kernel.representer_residual", kx.residual);
  r.report("boundary_kernel.hb_norm", space.norm(kx));

  r.assert_less("ystar.residual", ystar_eigencheck(space, -1.0, k_minus, kYstarBasis), kYstarTol);
  r.assert_greater("ystar.non_eigen_residual", ystar_eigencheck(space, -1.0, pair.a().truncated(1), kYstarBasis),
                   kYstarNonEigen);

  const FLambda& f1 = space.f_lambda();
  CVector hc(static_cast<Eigen::Index>(grid.max_degree() + 1));
  cd prev = 0.0;
  for (Eigen::Index k = 0; k < hc.size(); ++k) hc[k] = prev = f1.coeffs.coeff(static_cast<std::size_t>(k)) - prev;
  const AnalyticFunction h(hc);
  r.assert_less("a_lambda.eigen_identity", (a_lambda_apply(f1, h) + h).h2_norm() / h.h2_norm(), kIdentityTol);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < kIntertwiningTrials; ++t) {
    CVector q(static_cast<Eigen::Index>(kRandomDegree));
    for (Eigen::Index k = 0; k < q.size(); ++k) q[k] = cd(normal(rng), normal(rng));
    worst = std::max(worst, intertwining_residual(space, AnalyticFunction(q), kYstarBasis));
  }
  r.assert_less("intertwining.max_residual", worst, kIntertwiningTol);

  hb_property_checks(r, space);

  const Grid fine(kFineGrid);
  double last = std::numeric_limits<double>::infinity();
  for (double rr : {-0.9, -0.99, -0.999}) {
    const double dist = kernel_distance(rr, fine);
    r.metric("kernel_convergence.r=" + num(rr), dist);
    r.assert_less("kernel_convergence.decreasing.r=" + num(rr), dist, last);
    last = dist;
  }

  // Control: b = z/2 has constant modulus on the circle, so M(a) is dense.
  const double c = std::sqrt(3.0) / 2.0;
  const Pair control = Pair::from_closed_form(grid, [](cd z) { return 0.5 * z; }, [c](cd) { return cd(c); }, true);
  record_pair_properties(r, "control", control);
  const HbSpace control_space(control, cfg.m);
  const ComplementResult cc = ma_complement(control_space, cfg.d, cfg.tol);
  r.assert_equal("control.complement_dim", static_cast<double>(cc.dim), 0.0);
  int fails = 0;
  for (int k = 0; k < 8; ++k) {
    const cd z0 = std::polar(1.0, 2.0 * kPi * k / 8.0);
    const AngularDerivativeReport ad = angular_derivative_test(control, z0, 1.0);
    r.metric("control.probe" + std::to_string(k) + ".growth", ad.growth[1]);
    fails += ad.verdict == AngularVerdict::Fails ? 1 : 0;
  }
  r.assert_equal("control.probes_without_eigenvalue", fails, 8.0);
  const AngularDerivativeReport at_one = angular_derivative_test(pair, 1.0, 1.0);
  r.report("angular_test.z0=1.growth", at_one.growth[1]);
  const AngularDerivativeReport at_i = angular_derivative_test(pair, cd(0.0, 1.0), 1.0);
  r.report("angular_test.z0=i.growth", at_i.growth[1]);
  return r;
}

// ---------------------------------------------------------------------------

ScenarioReport theorem2_witness(const LabConfig& cfg) {
  ScenarioReport r("theorem2-witness");
  echo_common(r, cfg);
  const std::vector<unsigned> counts = cfg.blaschke.value_or(std::vector<unsigned>{1});
  r.param("blaschke", join(counts, [](unsigned c) { return std::to_string(c); }));
  const Grid grid(cfg.n);
  const Pair base = base_pair(grid);
  record_pair_properties(r, "b0", base);
  const HbSpace base_space(base, cfg.m);

  for (unsigned count : counts) {
    const FourData data = four_data(count);
    const std::string label = "blaschke=" + std::to_string(count);
    const Pair pair = four_pair(data, grid);
    record_pair_properties(r, label + ".pair", pair);
    record_inner_properties(r, label + ".I", data.inner, grid);

    const Resolution res = resolving_size(cfg.n, {data.f, data.g});
    const Grid fine(res.n);
    r.param(label + ".quadrature_grid", std::to_string(res.n));
    r.param(label + ".quadrature_resolved", res.resolved ? "true" : "false");
    const Pair fine_pair = four_pair(data, fine);
    const BoundaryFunction g = BoundaryFunction::sample(fine, data.g);
    const BoundaryFunction rhs =
        BoundaryFunction::sample(fine, [&](cd z) { return data.inner(z) * (2.0 - z) / 2.0; });
    const double err = (isometry_on_grid(fine_pair, g) - rhs).max_abs();
    r.assert_less(label + ".witness_identity", err, kWitnessTol);
    const double err3 = (isometry_on_grid(fine_pair, 3.0 * g) - 3.0 * rhs).max_abs() / 3.0;
    r.metric(label + ".witness_identity_scaled", err3);
    r.assert_equal(label + ".scaling_verdict_unchanged", (err3 < kWitnessTol) == (err < kWitnessTol) ? 1.0 : 0.0,
                   1.0);
    record_fft_properties(r, label + ".g", g);

    const BoundaryFunction f = pair.f_boundary();
    const BoundaryFunction phi = data.inner.on(grid).conj() * f.conj() / f;
    const KernelResult kr = numerical_kernel(ToeplitzMatrix(phi, cfg.m), cfg.tol);
    r.report(label + ".kernel_dim_minus_model_dim", static_cast<double>(kr.kernel.dim()) - (count + 1.0));

    // T_I is an isometry from H(b0) into H(I b0). Elements I h converge more
    // slowly under truncation than h itself, so the target space uses a longer
    // section.
    const std::size_t order = std::min(2 * cfg.m, cfg.n / 4);
    r.param(label + ".isometry_order", std::to_string(order));
    const HbSpace space(pair, order);
    const BoundaryFunction ib = data.inner.on(grid);
    double worst = 0.0;
    for (const AnalyticFunction& h : {polynomial({1.0, -0.5}), dbr_kernel(base, 0.3), polynomial({0.0, 0.5, 0.5})}) {
      const double n0 = base_space.norm(base_space.solve(h));
      const AnalyticFunction ih = project_plus(ib * h.on(grid));
      const double n1 = space.norm(space.solve(ih));
      worst = std::max(worst, std::abs(n1 - n0) / n0);
    }
    r.assert_less(label + ".multiplication_isometry", worst, kHbTol);
  }

  const ComplementResult comp = ma_complement(base_space, cfg.d, cfg.tol);
  r.report("complement_dim", static_cast<double>(comp.dim));
  return r;
}

// ---------------------------------------------------------------------------

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog{
      {"sweep-alpha", "kernel dimension of T_{conj(g)/g}, g = (1-z)^alpha, against the interval rule", sweep_alpha},
      {"theorem1", "ker T_{conj(g)/g} = f K_I for g = i(I1+I2)/(I1-I2) (1+I) f", theorem1_check},
      {"lemma-hss", "closed forms of P+(|f|^2 I k_lambda) and P+(|f|^2 k_lambda)", lemma_hss_check},
      {"example-s4", "g = f k_{-1} (1+I) lies in ker T_{conj(I f)/f} and outside f K_I", example_s4},
      {"complement-s5", "H(b0) minus M(a) is spanned by k_{-1}^{b0} = (2-z)/2", complement_s5},
      {"theorem2-witness", "T_{1-b} T_{conj f} g = I k_{-1}^{b0}", theorem2_witness},
  };
  return catalog;
}

const ScenarioInfo& find_scenario(const std::string& id) {
  std::string key = id;
  std::replace(key.begin(), key.end(), '_', '-');
  const auto& catalog = scenario_catalog();
  for (const auto& s : catalog)
    if (s.id == key) return s;
  const auto best = std::min_element(catalog.begin(), catalog.end(), [&](const ScenarioInfo& a, const ScenarioInfo& b) {
    return levenshtein(key, a.id) < levenshtein(key, b.id);
  });
  throw Error(ErrorKind::ConfigInvalid, "unknown scenario '" + id + "'; did you mean '" + best->id + "'?");
}

ScenarioReport run_scenario(const std::string& id, const LabConfig& cfg) {
  cfg.validate();
  const ScenarioInfo& info = find_scenario(id);
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport report = info.run(cfg);
  report.set_wall_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

}  // namespace hardy
