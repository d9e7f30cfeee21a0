// Report emission: the JSON document (schema "hypmass-report/1") and an
// aligned plain-text convergence table, both written atomically
// (tmp file + rename).
#pragma once

#include <map>
#include <string>

#include "hypmass/engine.hpp"

namespace hypmass {

struct CheckOutcome {
  bool pass = false;
  std::string detail;
};

struct RunResult {
  MassReport report;
  std::map<std::string, CheckOutcome> checks;  // keyed by check name
  bool ok = false;                             // all selected checks passed
};

std::string report_to_json(const RunResult& result);
std::string report_to_table(const RunResult& result);

// Atomic write: content goes to path + ".tmp", then rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace hypmass
