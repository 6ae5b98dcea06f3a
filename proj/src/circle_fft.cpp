#include "hardy/circle_fft.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace hardy {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Offset-grid phase e^{-i pi k / n} for the FFT bin holding c_k.
cd bin_phase(std::size_t bin, std::size_t n) {
  const long k = bin < n / 2 ? static_cast<long>(bin) : static_cast<long>(bin) - static_cast<long>(n);
  return std::polar(1.0, -kPi * static_cast<double>(k) / static_cast<double>(n));
}

CVector forward_coefficients(const CVector& values) {
  const std::size_t n = static_cast<std::size_t>(values.size());
  std::vector<cd> in(values.data(), values.data() + n);
  std::vector<cd> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  CVector c(static_cast<Eigen::Index>(n));
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t b = 0; b < n; ++b) c[static_cast<Eigen::Index>(b)] = out[b] * bin_phase(b, n) * scale;
  return c;
}

CVector inverse_coefficients(const CVector& coeffs) {
  const std::size_t n = static_cast<std::size_t>(coeffs.size());
  std::vector<cd> in(n);
  for (std::size_t b = 0; b < n; ++b) in[b] = coeffs[static_cast<Eigen::Index>(b)] * std::conj(bin_phase(b, n));
  std::vector<cd> out;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, in);
  return Eigen::Map<const CVector>(out.data(), static_cast<Eigen::Index>(n));
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (a != b) {
    throw Error(ErrorKind::GridMismatch,
                "grids of size " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}

}  // namespace

Grid::Grid(std::size_t n) : n_(n) {
  if (!is_power_of_two(n) || n < 64) {
    throw Error(ErrorKind::InvalidGrid, "grid size must be a power of two >= 64, got " + std::to_string(n));
  }
}

BoundaryFunction::BoundaryFunction(Grid grid, CVector values)
    : grid_(grid), values_(std::move(values)), cache_(std::make_shared<Cache>()) {
  if (static_cast<std::size_t>(values_.size()) != grid_.size()) {
    throw Error(ErrorKind::GridMismatch, "sample count does not match grid size");
  }
}

BoundaryFunction BoundaryFunction::synthesize(const Grid& grid, const CVector& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != grid.size()) {
    throw Error(ErrorKind::GridMismatch, "coefficient count does not match grid size");
  }
  return BoundaryFunction(grid, inverse_coefficients(coeffs));
}

const CVector& BoundaryFunction::coefficients() const {
  std::call_once(cache_->once, [this] { cache_->coeffs = forward_coefficients(values_); });
  return cache_->coeffs;
}

cd BoundaryFunction::fourier(long k) const {
  const long n = static_cast<long>(grid_.size());
  if (k < -n / 2 || k >= n / 2) return {};
  return coefficients()[static_cast<Eigen::Index>(k >= 0 ? k : k + n)];
}

BoundaryFunction BoundaryFunction::conj() const { return BoundaryFunction(grid_, values_.conjugate()); }

BoundaryFunction BoundaryFunction::abs2() const {
  return map([](cd x) { return std::norm(x); });
}

BoundaryFunction BoundaryFunction::abs() const {
  return map([](cd x) { return std::abs(x); });
}

BoundaryFunction BoundaryFunction::real() const {
  return map([](cd x) { return x.real(); });
}

double BoundaryFunction::max_abs() const { return values_.cwiseAbs().maxCoeff(); }
double BoundaryFunction::min_abs() const { return values_.cwiseAbs().minCoeff(); }
double BoundaryFunction::max_abs_imag() const { return values_.imag().cwiseAbs().maxCoeff(); }

double BoundaryFunction::l2_norm_squared() const {
  return values_.squaredNorm() / static_cast<double>(grid_.size());
}

BoundaryFunction operator+(const BoundaryFunction& a, const BoundaryFunction& b) {
  require_same_grid(a.grid_, b.grid_);
  return BoundaryFunction(a.grid_, a.values_ + b.values_);
}

BoundaryFunction operator-(const BoundaryFunction& a, const BoundaryFunction& b) {
  require_same_grid(a.grid_, b.grid_);
  return BoundaryFunction(a.grid_, a.values_ - b.values_);
}

BoundaryFunction operator*(const BoundaryFunction& a, const BoundaryFunction& b) {
  require_same_grid(a.grid_, b.grid_);
  return BoundaryFunction(a.grid_, a.values_.cwiseProduct(b.values_));
}

BoundaryFunction operator/(const BoundaryFunction& a, const BoundaryFunction& b) {
  require_same_grid(a.grid_, b.grid_);
  return BoundaryFunction(a.grid_, a.values_.cwiseQuotient(b.values_));
}

BoundaryFunction operator*(cd s, const BoundaryFunction& a) { return BoundaryFunction(a.grid_, s * a.values_); }

BoundaryFunction operator+(cd s, const BoundaryFunction& a) {
  return BoundaryFunction(a.grid_, a.values_.array() + s);
}

// ---------------------------------------------------------------------------

AnalyticFunction::AnalyticFunction(CVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) coeffs_ = CVector::Zero(1);
}

AnalyticFunction AnalyticFunction::monomial(std::size_t k, cd c) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(k + 1));
  v[static_cast<Eigen::Index>(k)] = c;
  return AnalyticFunction(std::move(v));
}

cd AnalyticFunction::operator()(cd z) const {
  cd acc = 0.0;
  for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
  return acc;
}

AnalyticFunction AnalyticFunction::truncated(std::size_t m) const { return AnalyticFunction(head(m + 1)); }

CVector AnalyticFunction::head(std::size_t m) const {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(m));
  const Eigen::Index keep = std::min<Eigen::Index>(static_cast<Eigen::Index>(m), coeffs_.size());
  v.head(keep) = coeffs_.head(keep);
  return v;
}

BoundaryFunction AnalyticFunction::on(const Grid& grid) const {
  if (order() > grid.max_degree()) {
    throw Error(ErrorKind::GridMismatch, "analytic order " + std::to_string(order()) +
                                             " exceeds grid capacity " + std::to_string(grid.max_degree()));
  }
  CVector c = CVector::Zero(static_cast<Eigen::Index>(grid.size()));
  c.head(coeffs_.size()) = coeffs_;
  return BoundaryFunction::synthesize(grid, c);
}

AnalyticFunction AnalyticFunction::shifted_down() const {
  if (coeffs_.size() == 1) return AnalyticFunction();
  return AnalyticFunction(CVector(coeffs_.tail(coeffs_.size() - 1)));
}

AnalyticFunction AnalyticFunction::shifted_up() const {
  CVector v(coeffs_.size() + 1);
  v[0] = 0.0;
  v.tail(coeffs_.size()) = coeffs_;
  return AnalyticFunction(std::move(v));
}

AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b) {
  const std::size_t m = std::max(a.order(), b.order()) + 1;
  return AnalyticFunction(CVector(a.head(m) + b.head(m)));
}

AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b) {
  const std::size_t m = std::max(a.order(), b.order()) + 1;
  return AnalyticFunction(CVector(a.head(m) - b.head(m)));
}

AnalyticFunction operator*(cd s, const AnalyticFunction& a) { return AnalyticFunction(CVector(s * a.coeffs_)); }

AnalyticFunction multiply(const AnalyticFunction& a, const AnalyticFunction& b, std::size_t order) {
  CVector out = CVector::Zero(static_cast<Eigen::Index>(order + 1));
  for (std::size_t i = 0; i <= std::min(order, a.order()); ++i) {
    const cd ai = a.coeff(i);
    if (ai == cd{}) continue;
    for (std::size_t j = 0; j <= std::min(order - i, b.order()); ++j) {
      out[static_cast<Eigen::Index>(i + j)] += ai * b.coeff(j);
    }
  }
  return AnalyticFunction(std::move(out));
}

// ---------------------------------------------------------------------------

AnalyticFunction project_plus(const BoundaryFunction& f) {
  const std::size_t half = f.size() / 2;
  return AnalyticFunction(CVector(f.coefficients().head(static_cast<Eigen::Index>(half))));
}

namespace {

constexpr double kRealTolerance = 1e-10;

void require_real(const BoundaryFunction& w) {
  const double scale = std::max(1.0, w.max_abs());
  if (w.max_abs_imag() > kRealTolerance * scale) {
    throw Error(ErrorKind::NonRealDensity, "imaginary part " + std::to_string(w.max_abs_imag()));
  }
}

}  // namespace

AnalyticFunction herglotz(const BoundaryFunction& w) {
  require_real(w);
  const BoundaryFunction real_part = w.real();
  const std::size_t half = w.size() / 2;
  CVector h(static_cast<Eigen::Index>(half));
  h[0] = real_part.fourier(0).real();
  for (std::size_t k = 1; k < half; ++k) h[static_cast<Eigen::Index>(k)] = 2.0 * real_part.fourier(static_cast<long>(k));
  return AnalyticFunction(std::move(h));
}

BoundaryFunction analytic_completion(const BoundaryFunction& v) {
  require_real(v);
  const BoundaryFunction real_part = v.real();
  const std::size_t n = v.size();
  // -i sign(k) multiplier gives the conjugate function; Nyquist and DC drop out.
  CVector c = real_part.coefficients();
  for (std::size_t b = 0; b < n; ++b) {
    const auto idx = static_cast<Eigen::Index>(b);
    if (b == 0 || b == n / 2) c[idx] = 0.0;
    else if (b < n / 2) c[idx] *= cd(0.0, -1.0);
    else c[idx] *= cd(0.0, 1.0);
  }
  const BoundaryFunction conjugate = BoundaryFunction::synthesize(v.grid(), c);
  CVector out(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) out[static_cast<Eigen::Index>(j)] = cd(real_part[j].real(), conjugate[j].real());
  return BoundaryFunction(v.grid(), std::move(out));
}

OuterFromModulus outer_from_modulus(const BoundaryFunction& w) {
  require_real(w);
  CVector logs(static_cast<Eigen::Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double x = w[j].real();
    if (!(x >= std::numeric_limits<double>::min())) {
      throw Error(ErrorKind::NonIntegrableLog, "modulus sample " + std::to_string(j) + " is zero, negative or subnormal");
    }
    logs[static_cast<Eigen::Index>(j)] = std::log(x);
  }
  const BoundaryFunction completed = analytic_completion(BoundaryFunction(w.grid(), std::move(logs)));
  BoundaryFunction boundary = completed.map([](cd x) { return std::exp(x); });
  AnalyticFunction coeffs = project_plus(boundary);
  return {std::move(coeffs), std::move(boundary)};
}

cd h2_inner(const AnalyticFunction& f, const AnalyticFunction& g) {
  const std::size_t m = std::min(f.order(), g.order()) + 1;
  return g.head(m).dot(f.head(m));
}

cd weighted_inner(const BoundaryFunction& f, const BoundaryFunction& g, const BoundaryFunction& w) {
  require_same_grid(f.grid(), g.grid());
  require_same_grid(f.grid(), w.grid());
  cd acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::conj(g[j]) * w[j];
  return acc / static_cast<double>(f.size());
}

cd weighted_inner(const AnalyticFunction& f, const AnalyticFunction& g, const BoundaryFunction& w) {
  return weighted_inner(f.on(w.grid()), g.on(w.grid()), w);
}

cd grid_inner(const BoundaryFunction& f, const BoundaryFunction& g) {
  require_same_grid(f.grid(), g.grid());
  return g.values().dot(f.values()) / static_cast<double>(f.size());
}

}  // namespace hardy
