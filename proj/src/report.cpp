#include "hardy/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hardy/toeplitz.hpp"

namespace hardy {

namespace {

using json = nlohmann::ordered_json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json config_json(const LabConfig& cfg) {
  json c;
  c["n"] = cfg.n;
  c["m"] = cfg.m;
  c["tol"] = cfg.tol;
  c["seed"] = cfg.seed;
  c["alphas"] = cfg.alphas;
  c["blaschke"] = cfg.blaschke ? json(*cfg.blaschke) : json(nullptr);
  c["d"] = cfg.d;
  json lambdas = json::array();
  for (const cd& l : cfg.lambdas) lambdas.push_back(json::array({l.real(), l.imag()}));
  c["lambdas"] = lambdas;
  return c;
}

std::string spectrum_file(const ScenarioReport& r, const Spectrum& s) { return r.id() + "." + slug(s.name) + ".csv"; }

}  // namespace

std::string slug(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    out += (std::isalnum(c) || ch == '-' || ch == '.') ? ch : '_';
  }
  return out;
}

std::string report_json(const ScenarioReport& r, const LabConfig& cfg, const ReportOptions& opts) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["scenario"] = r.id();
  doc["config"] = config_json(cfg);
  json params = json::object();
  for (const auto& [k, v] : r.params()) params[k] = v;
  doc["parameters"] = params;
  doc["passed"] = r.passed();
  doc["failures"] = r.failures();

  json checks = json::array();
  for (const Check& c : r.checks()) {
    json j;
    j["name"] = c.name;
    j["value"] = number(c.value);
    j["tolerance"] = number(c.threshold);
    j["relation"] = std::string(to_string(c.relation));
    j["kind"] = c.asserted ? "assert" : "report";
    j["verdict"] = std::string(verdict(c));
    checks.push_back(std::move(j));
  }
  doc["checks"] = checks;

  json metrics = json::object();
  for (const auto& [k, v] : r.metrics()) metrics[k] = number(v);
  doc["metrics"] = metrics;

  json spectra = json::array();
  for (const Spectrum& s : r.spectra()) {
    spectra.push_back({{"name", s.name}, {"file", spectrum_file(r, s)}, {"count", s.sigma.size()}});
  }
  doc["spectra"] = spectra;
  if (opts.include_timing) doc["wall_time_s"] = r.wall_time();
  return doc.dump(2) + "\n";
}

std::string report_summary(const ScenarioReport& r) {
  std::ostringstream out;
  out << r.id() << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.failures() << " failed of "
      << std::count_if(r.checks().begin(), r.checks().end(), [](const Check& c) { return c.asserted; })
      << " asserted)\n";
  for (const Check& c : r.checks()) {
    char line[512];
    if (c.asserted) {
      std::snprintf(line, sizeof line, "  %-11s %-60s %.6e %s %.3e\n", std::string(verdict(c)).c_str(),
                    c.name.c_str(), c.value, std::string(to_string(c.relation)).c_str(), c.threshold);
    } else {
      std::snprintf(line, sizeof line, "  %-11s %-60s %.6e\n", "report-only", c.name.c_str(), c.value);
    }
    out << line;
  }
  return out.str();
}

std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir, const ScenarioReport& r,
                                                const LabConfig& cfg, const ReportOptions& opts) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto put = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::ConfigInvalid, "cannot write " + path.string());
    f << text;
    written.push_back(path);
  };
  put(dir / (r.id() + ".json"), report_json(r, cfg, opts));
  put(dir / (r.id() + ".summary.txt"), report_summary(r));
  for (const Spectrum& s : r.spectra()) {
    std::ostringstream csv;
    write_spectrum_csv(csv, s.sigma);
    put(dir / spectrum_file(r, s), csv.str());
  }
  return written;
}

cd parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::ConfigInvalid, "empty complex number");
  const auto real_part = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != t.size()) throw Error(ErrorKind::ConfigInvalid, "cannot parse '" + text + "' as a complex number");
    return v;
  };
  if (s.back() != 'i') return real_part(s);
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : real_part(re), real_part(im)};
}

}  // namespace hardy
