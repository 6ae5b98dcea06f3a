// Acceptance run: executes the scenarios at the default configuration and
// prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hardy/kernel_lab.hpp"

using namespace hardy;

namespace {

constexpr double kTimeBudget = 30.0;  // seconds per item on one core

struct Run {
  ScenarioReport report{""};
  std::string error;
  double seconds = 0.0;
};

struct Criterion {
  std::string label;
  std::string scenario;
  std::vector<unsigned> blaschke;  // empty: scenario default
  std::function<bool(const std::string&)> select;
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }
bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

class Runner {
 public:
  const Run& get(const std::string& id, const std::vector<unsigned>& blaschke) {
    const std::string key = id + "/" + std::to_string(blaschke.empty() ? 0 : blaschke.front());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    LabConfig cfg;
    if (!blaschke.empty()) cfg.blaschke = blaschke;
    Run run;
    const auto start = std::chrono::steady_clock::now();
    try {
      run.report = run_scenario(id, cfg);
    } catch (const Error& e) {
      run.report = ScenarioReport(id);
      run.error = e.what();
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cache_.emplace(key, std::move(run)).first->second;
  }

  std::vector<const Run*> all() const {
    std::vector<const Run*> runs;
    for (const auto& [key, run] : cache_) runs.push_back(&run);
    return runs;
  }

 private:
  std::map<std::string, Run> cache_;
};

struct Tally {
  std::size_t selected = 0;
  std::vector<const Check*> failed;
  std::vector<std::string> errors;
  double seconds = 0.0;
};

void collect(Tally& t, const Run& run, const std::function<bool(const std::string&)>& select) {
  if (!run.error.empty()) t.errors.push_back(run.report.id() + " aborted: " + run.error);
  t.seconds = std::max(t.seconds, run.seconds);
  for (const Check& c : run.report.checks()) {
    if (!c.asserted || !select(c.name)) continue;
    ++t.selected;
    if (!c.passed) t.failed.push_back(&c);
  }
}

bool print(const std::string& label, const Tally& t) {
  const bool slow = t.seconds > kTimeBudget;
  const bool ok = t.errors.empty() && t.selected > 0 && t.failed.empty() && !slow;
  std::printf("%s  %-58s %3zu checks, %2zu failed, %6.2f s", ok ? "PASS" : "FAIL", label.c_str(), t.selected,
              t.failed.size(), t.seconds);
  if (t.selected == 0 && t.errors.empty()) std::printf("; no checks selected");
  if (slow) std::printf("; over the %.0f s budget", kTimeBudget);
  for (const std::string& e : t.errors) std::printf("; %s", e.c_str());
  for (std::size_t i = 0; i < t.failed.size() && i < 3; ++i) {
    const Check& c = *t.failed[i];
    std::printf("; %s = %.3e (%s %.1e)", c.name.c_str(), c.value, std::string(to_string(c.relation)).c_str(),
                c.threshold);
  }
  if (t.failed.size() > 3) std::printf("; ...");
  std::printf("\n");
  return ok;
}

}  // namespace

int main() {
  const auto not_property = [](const std::string& n) { return !starts_with(n, "property."); };
  const auto blaschke_prefix = [](unsigned count) {
    return [p = "blaschke=" + std::to_string(count) + "."](const std::string& n) { return starts_with(n, p); };
  };

  const std::vector<Criterion> criteria{
      {"1 kernel dimensions of T_{conj(g)/g}, g = (1-z)^alpha", "sweep-alpha", {}, not_property},
      {"2 Theorem 1 instances: symbol identity and f K_I kernel", "theorem1", {}, not_property},
      {"3 lemma identities (i)/(ii), n and 2n", "lemma-hss", {}, not_property},
      {"4 section-four example, m_B = 1", "example-s4", {1}, blaschke_prefix(1)},
      {"4 section-four example, m_B = 4", "example-s4", {4}, blaschke_prefix(4)},
      {"5 M(a) complement, Y* eigenvector, A_1, intertwining", "complement-s5", {},
       [](const std::string& n) {
         return starts_with(n, "complement.") || n == "ystar.residual" || n == "a_lambda.eigen_identity" ||
                n == "intertwining.max_residual";
       }},
      {"6 witness T_{1-b}T_{conj f} g = I k_{-1}^{b0}", "theorem2-witness", {},
       [](const std::string& n) { return ends_with(n, ".witness_identity"); }},
      {"7 H(b) backend agreement and reproducing property", "complement-s5", {},
       [](const std::string& n) { return n == "hb.backend_agreement" || n == "hb.reproducing_property"; }},
  };

  Runner runner;
  int failed = 0;
  for (const Criterion& c : criteria) {
    Tally t;
    collect(t, runner.get(c.scenario, c.blaschke), c.select);
    failed += print(c.label, t) ? 0 : 1;
  }

  // Property suites over every object built by every scenario run above,
  // plus the scenarios no criterion has exercised yet.
  for (const auto& s : scenario_catalog()) runner.get(s.id, {});
  Tally props;
  for (const Run* run : runner.all()) collect(props, *run, [](const std::string& n) { return starts_with(n, "property."); });
  failed += print("8 property suites across all scenario runs", props) ? 0 : 1;

  std::printf("%d of %zu criteria failed\n", failed, criteria.size() + 1);
  return failed == 0 ? 0 : 1;
}
