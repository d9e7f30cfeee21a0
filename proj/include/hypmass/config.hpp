// Run configuration: key = value sections parsed from text, validated with
// field-level errors. Unknown keys and duplicates are errors.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace hypmass {

enum class CheckKind { MASS, RICCI, INVARIANCE, EXACTNESS, EXPANSION, SPIN };

const char* to_string(CheckKind c);

struct RunConfig {
  int dimension = 3;
  std::string metric = "reference";        // zoo selector
  double mass_parameter = 1.0;             // ads_schwarzschild
  double amplitude = 1.0;                  // trace_perturbation
  double exponent = 0.0;                   // trace_perturbation (0 -> n)
  std::string data_file;                   // conformally_compact
  int resolution = 32;
  std::vector<double> radii;               // default 10 * 2^j, j = 0..4
  std::set<CheckKind> checks = {CheckKind::MASS};
  std::string out_dir = ".";
  std::string format = "both";             // json | table | both
  int workers = 4;
  unsigned seed = 12345;
  // optional tolerance overrides, keyed by check name (fault injection and
  // CI tuning); empty means the documented defaults
  std::map<std::string, double> tolerance_overrides;

  double tolerance(const std::string& name, double fallback) const;
};

// Parse the config text. Errors carry line numbers; validation errors name
// the offending field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace hypmass
