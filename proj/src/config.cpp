#include "hypmass/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hypmass/types.hpp"

namespace hypmass {

const char* to_string(CheckKind c) {
  switch (c) {
    case CheckKind::MASS: return "mass";
    case CheckKind::RICCI: return "ricci";
    case CheckKind::INVARIANCE: return "invariance";
    case CheckKind::EXACTNESS: return "exactness";
    case CheckKind::EXPANSION: return "expansion";
    case CheckKind::SPIN: return "spin";
  }
  return "?";
}

double RunConfig::tolerance(const std::string& name, double fallback) const {
  auto it = tolerance_overrides.find(name);
  return it == tolerance_overrides.end() ? fallback : it->second;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail("config parse error at line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

CheckKind parse_check(const std::string& s, int line) {
  if (s == "mass") return CheckKind::MASS;
  if (s == "ricci") return CheckKind::RICCI;
  if (s == "invariance") return CheckKind::INVARIANCE;
  if (s == "exactness") return CheckKind::EXACTNESS;
  if (s == "expansion") return CheckKind::EXPANSION;
  if (s == "spin") return CheckKind::SPIN;
  parse_fail(line, "unknown check '" + s + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.checks.clear();
  bool checks_given = false;
  bool radii_given = false;

  std::istringstream in(text);
  std::string line;
  std::string section = "run";
  std::set<std::string> seen;  // section.key duplicates are errors
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "output" && section != "tolerances")
        parse_fail(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(lineno, "empty key");
    if (!seen.insert(section + "." + key).second)
      parse_fail(lineno, "duplicate key '" + key + "'");

    auto as_double = [&](const std::string& v) {
      try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
      } catch (...) {
        parse_fail(lineno, "expected a number for '" + key + "'");
      }
    };
    auto as_int = [&](const std::string& v) {
      const double d = as_double(v);
      if (d != std::floor(d)) parse_fail(lineno, "expected an integer for '" + key + "'");
      return static_cast<long long>(d);
    };

    if (section == "tolerances") {
      cfg.tolerance_overrides[key] = as_double(value);
      continue;
    }
    if (section == "output") {
      if (key == "directory") cfg.out_dir = value;
      else if (key == "format") cfg.format = value;
      else parse_fail(lineno, "unknown key '" + key + "' in [output]");
      continue;
    }
    if (key == "dimension") cfg.dimension = static_cast<int>(as_int(value));
    else if (key == "metric") cfg.metric = value;
    else if (key == "mass_parameter") cfg.mass_parameter = as_double(value);
    else if (key == "amplitude") cfg.amplitude = as_double(value);
    else if (key == "exponent") cfg.exponent = as_double(value);
    else if (key == "data_file") cfg.data_file = value;
    else if (key == "resolution") cfg.resolution = static_cast<int>(as_int(value));
    else if (key == "workers") cfg.workers = static_cast<int>(as_int(value));
    else if (key == "seed") cfg.seed = static_cast<unsigned>(as_int(value));
    else if (key == "radii") {
      radii_given = true;
      cfg.radii.clear();
      for (const std::string& tok : split_list(value)) cfg.radii.push_back(as_double(tok));
    } else if (key == "checks") {
      checks_given = true;
      for (const std::string& tok : split_list(value)) cfg.checks.insert(parse_check(tok, lineno));
    } else {
      parse_fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (!checks_given) cfg.checks = {CheckKind::MASS};
  if (!radii_given) {
    cfg.radii.clear();
    for (int j = 0; j < 5; ++j) cfg.radii.push_back(10.0 * std::pow(2.0, j));
  }

  // validation
  if (cfg.dimension < 3) fail("config validation error: field 'dimension' must be >= 3");
  if (cfg.resolution < 8) fail("config validation error: field 'resolution' must be >= 8");
  if (cfg.radii.size() < 3) fail("config validation error: field 'radii' needs >= 3 entries");
  for (size_t j = 1; j < cfg.radii.size(); ++j)
    if (cfg.radii[j] <= cfg.radii[j - 1])
      fail("config validation error: field 'radii' not increasing");
  if (cfg.radii.front() < 10.0)
    fail("config validation error: field 'radii' must start at r_0 >= 10");
  if (cfg.workers < 1) fail("config validation error: field 'workers' must be >= 1");
  if (cfg.format != "json" && cfg.format != "table" && cfg.format != "both")
    fail("config validation error: field 'format' must be json, table or both");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hypmass
