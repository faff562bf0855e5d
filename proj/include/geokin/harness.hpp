#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geokin/checks.hpp"
#include "geokin/metric.hpp"
#include "geokin/source.hpp"

namespace geokin::harness {

// Plain-text key=value configuration with dotted sections and '#' comments.
// No environment overrides: one file fully determines a run.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string str(const std::string& key, const std::string& def) const;
  double num(const std::string& key, double def) const;
  int integer(const std::string& key, int def) const;

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

 private:
  std::map<std::string, std::string> kv_;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MetricField metric_from_config(const Config& cfg);
SourceField source_from_config(const Config& cfg);

struct SuiteCheck {
  std::string name;
  std::string ref;        // equation / lemma label the check exercises
  double value = 0.0;
  double threshold = 0.0; // 0 when the tolerance is composite (see detail)
  bool pass = false;
  bool expected_fail = false;
  double wall_ms = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;
  std::vector<std::string> artifacts;  // CSV files written
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Serialize the report: format is "text" or "csv". Stable column order.
std::string emit_report(const SuiteReport& r, const std::string& format);

// Runs one suite (geodesic | forward | kinetic | spectrum | lemmas | recover |
// uniqueness | all) in dependency order, writing CSV artifacts under out_dir.
SuiteReport run_experiment(const Config& cfg, const std::string& suite,
                           const std::string& out_dir, uint64_t seed);

}  // namespace geokin::harness
