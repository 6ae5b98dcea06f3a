#pragma once

// Scenario runners: each builds its objects from a LabConfig, runs the
// numerical checks and returns a ScenarioReport. Checks are either asserted
// (pass/fail against a recorded threshold) or report-only measurements.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardy/circle_fft.hpp"
#include "hardy/functions.hpp"
#include "hardy/pairs.hpp"

namespace hardy {

struct LabConfig {
  std::size_t n = 4096;
  std::size_t m = 512;
  double tol = 1e-6;
  std::uint64_t seed = 20240229;
  std::vector<double> alphas{0.3, 1.0, 1.4, 1.7, 2.3, 2.7};
  /// Blaschke zero counts; unset means the per-scenario default.
  std::optional<std::vector<unsigned>> blaschke;
  std::size_t d = 32;
  std::vector<cd> lambdas{cd(0.0), cd(0.3), cd(0.0, -0.5)};

  /// Throws ConfigInvalid unless n is a power of two >= 64, 1 <= m <= n/4,
  /// tol lies in [1e-12, 1e-2] and d >= 1.
  void validate() const;
};

enum class Relation { Less, Greater, AtLeast, Equal };

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::Less;
  bool asserted = true;
  bool passed = true;
};

std::string_view to_string(Relation r);
/// "pass", "fail" or "report-only".
std::string_view verdict(const Check& c);

struct Spectrum {
  std::string name;
  std::vector<double> sigma;
};

class ScenarioReport {
 public:
  explicit ScenarioReport(std::string id) : id_(std::move(id)) {}

  void param(const std::string& name, std::string value) { params_.emplace_back(name, std::move(value)); }
  void metric(const std::string& name, double value) { metrics_.emplace_back(name, value); }
  void spectrum(const std::string& name, std::vector<double> sigma) { spectra_.push_back({name, std::move(sigma)}); }

  void assert_less(const std::string& name, double value, double threshold);
  void assert_greater(const std::string& name, double value, double threshold);
  void assert_at_least(const std::string& name, double value, double threshold);
  void assert_equal(const std::string& name, double value, double expected);
  void report(const std::string& name, double value);

  const std::string& id() const noexcept { return id_; }
  const std::vector<std::pair<std::string, std::string>>& params() const noexcept { return params_; }
  const std::vector<std::pair<std::string, double>>& metrics() const noexcept { return metrics_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const std::vector<Spectrum>& spectra() const noexcept { return spectra_; }

  double wall_time() const noexcept { return wall_time_; }
  void set_wall_time(double seconds) noexcept { wall_time_ = seconds; }

  /// Every asserted check passed.
  bool passed() const;
  std::size_t failures() const;
  /// Looks up a check by exact name.
  const Check* find(const std::string& name) const;

 private:
  void add(const std::string& name, double value, double threshold, Relation rel, bool asserted);

  std::string id_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<std::pair<std::string, double>> metrics_;
  std::vector<Check> checks_;
  std::vector<Spectrum> spectra_;
  double wall_time_ = 0.0;
};

// Structural property checks recorded under "property.*" in every report.
void record_pair_properties(ScenarioReport& r, const std::string& label, const Pair& p);
void record_inner_properties(ScenarioReport& r, const std::string& label, const InnerFn& inner, const Grid& grid);
void record_fft_properties(ScenarioReport& r, const std::string& label, const BoundaryFunction& v);

// The section-four data: a = (1+z)/2, b0 = z(1-z)/2, I = z B with zeros
// r_k = -(1 - 2^{-k}), k = 1..count.
struct FourData {
  unsigned blaschke = 0;
  InnerFn inner;
  std::vector<double> zeros;
  DiskFn a, b0, b, f, g;
};
FourData four_data(unsigned blaschke);
Pair four_pair(const FourData& data, const Grid& grid);
Pair base_pair(const Grid& grid);  // (b0, a)

/// Dimension predicted for alpha in (n - 1/2, n + 1/2]. Throws EndpointAlpha
/// when alpha is closer than 0.1 to a half-integer.
std::size_t predicted_dimension(double alpha);

ScenarioReport sweep_alpha(const LabConfig& cfg);
ScenarioReport theorem1_check(const LabConfig& cfg);
ScenarioReport lemma_hss_check(const LabConfig& cfg);
ScenarioReport example_s4(const LabConfig& cfg);
ScenarioReport complement_s5(const LabConfig& cfg);
ScenarioReport theorem2_witness(const LabConfig& cfg);

struct ScenarioInfo {
  std::string id;
  std::string anchor;
  std::function<ScenarioReport(const LabConfig&)> run;
};

const std::vector<ScenarioInfo>& scenario_catalog();
/// Throws ConfigInvalid naming the closest id when `id` is unknown.
const ScenarioInfo& find_scenario(const std::string& id);
/// Runs with timing; validates the config first.
ScenarioReport run_scenario(const std::string& id, const LabConfig& cfg);

}  // namespace hardy
