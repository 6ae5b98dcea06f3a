// hardy-lab: run the numerical scenarios and write their reports.
//
//   hardy-lab list [--json]
//   hardy-lab run <scenario|all> [options]
//   hardy-lab <scenario|all> [options]
//
// Exit status: 0 when every asserted check passed, 1 when a check failed or a
// scenario aborted, 2 for invalid configuration.

#include <cstdlib>
#include <algorithm>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/kernel_lab.hpp"
#include "hardy/report.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr const char* kOutEnv = "HARDY_LAB_OUT";
constexpr const char* kDefaultOut = "hardy-lab-out";

bool is_config_error(const hardy::Error& e) {
  return e.kind() == hardy::ErrorKind::ConfigInvalid || e.kind() == hardy::ErrorKind::EndpointAlpha;
}

int list(bool as_json) {
  const auto& catalog = hardy::scenario_catalog();
  if (as_json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : catalog) doc.push_back({{"id", s.id}, {"anchor", s.anchor}});
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& s : catalog) std::cout << s.id << "\t" << s.anchor << "\n";
  }
  return 0;
}

struct Outcome {
  hardy::ScenarioReport report;
  std::string error;
  bool config_error = false;
};

Outcome run_one(const std::string& id, const hardy::LabConfig& cfg) {
  try {
    return {hardy::run_scenario(id, cfg), "", false};
  } catch (const hardy::Error& e) {
    hardy::ScenarioReport r(id);
    r.param("error", e.what());
    r.assert_equal("scenario.completed", 0.0, 1.0);
    return {std::move(r), e.what(), is_config_error(e)};
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] != "list" && args[0] != "run" && args[0].rfind('-', 0) != 0) {
    args.insert(args.begin(), "run");
  }

  CLI::App app{"Numerical laboratory for Toeplitz kernels and de Branges-Rovnyak spaces", "hardy-lab"};
  app.require_subcommand(1);

  bool as_json = false;
  auto* list_cmd = app.add_subcommand("list", "List the available scenarios");
  list_cmd->add_flag("--json", as_json, "Machine-readable output");

  hardy::LabConfig cfg;
  std::string scenario;
  std::string out_dir;
  std::string lambdas;
  std::vector<unsigned> blaschke;
  unsigned jobs = 1;
  bool timing = false;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario (or 'all')");
  run_cmd->add_option("scenario", scenario, "Scenario id or 'all'")->required();
  run_cmd->add_option("--n", cfg.n, "Grid size (power of two)")->capture_default_str();
  run_cmd->add_option("--m", cfg.m, "Truncation order (<= n/4)")->capture_default_str();
  run_cmd->add_option("--tol", cfg.tol, "Relative singular-value cut")->capture_default_str();
  run_cmd->add_option("--seed", cfg.seed, "Seed for random test vectors")->capture_default_str();
  run_cmd->add_option("--alphas", cfg.alphas, "Comma-separated exponents")->delimiter(',');
  run_cmd->add_option("--blaschke", blaschke, "Comma-separated Blaschke zero counts")->delimiter(',');
  run_cmd->add_option("--d", cfg.d, "Basis cutoff for the M(a) complement")->capture_default_str();
  run_cmd->add_option("--lambdas", lambdas, "Comma-separated disk points, e.g. 0,0.3,-0.5i");
  run_cmd->add_option("--out", out_dir, std::string("Output directory (default $") + kOutEnv + " or " + kDefaultOut + ")");
  run_cmd->add_option("--jobs", jobs, "Scenarios run concurrently for 'all'")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--timing", timing, "Record wall time in the reports");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*list_cmd) return list(as_json);

  try {
    if (!blaschke.empty()) cfg.blaschke = blaschke;
    if (!lambdas.empty()) {
      cfg.lambdas.clear();
      std::string item;
      std::stringstream ss(lambdas);
      while (std::getline(ss, item, ',')) cfg.lambdas.push_back(hardy::parse_complex(item));
    }
    cfg.validate();
    std::vector<std::string> ids;
    if (scenario == "all") {
      for (const auto& s : hardy::scenario_catalog()) ids.push_back(s.id);
    } else {
      ids.push_back(hardy::find_scenario(scenario).id);
    }
    if (out_dir.empty()) {
      const char* env = std::getenv(kOutEnv);
      out_dir = env && *env ? env : kDefaultOut;
    }

    // Bounded fan-out; reports are collected and written in catalog order.
    std::vector<Outcome> outcomes(ids.size(), Outcome{hardy::ScenarioReport(""), "", false});
    for (std::size_t start = 0; start < ids.size(); start += jobs) {
      std::vector<std::future<Outcome>> batch;
      for (std::size_t i = start; i < std::min(ids.size(), start + jobs); ++i) {
        batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run_one, ids[i], cfg));
      }
      for (std::size_t i = 0; i < batch.size(); ++i) outcomes[start + i] = batch[i].get();
    }

    int status = 0;
    const hardy::ReportOptions opts{timing};
    for (const Outcome& o : outcomes) {
      if (o.config_error) {
        std::cerr << "hardy-lab: " << o.error << "\n";
        status = std::max(status, kExitConfig);
        continue;
      }
      hardy::write_report(out_dir, o.report, cfg, opts);
      std::cout << hardy::report_summary(o.report);
      if (!o.error.empty()) std::cerr << "hardy-lab: " << o.report.id() << " aborted: " << o.error << "\n";
      if (!o.report.passed()) status = std::max(status, kExitFailure);
    }
    return status;
  } catch (const hardy::Error& e) {
    std::cerr << "hardy-lab: " << e.what() << "\n";
    return is_config_error(e) ? kExitConfig : kExitFailure;
  }
}
