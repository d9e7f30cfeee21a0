#include "hypmass/report.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hypmass/types.hpp"

namespace hypmass {

std::string report_to_json(const RunResult& result) {
  using json = nlohmann::ordered_json;
  const MassReport& rep = result.report;
  json j;
  j["schema"] = "hypmass-report/1";
  j["metric"] = rep.metric;
  j["dimension"] = rep.dimension;
  j["radii"] = rep.radii;
  j["flux"] = rep.flux;
  j["equator"] = rep.equator;
  j["mass"] = rep.mass;
  j["extrapolated"] = std::vector<double>(rep.vec.components.data(),
                                          rep.vec.components.data() + rep.vec.components.size());
  j["error"] = std::vector<double>(
      rep.vec.error_estimates.data(),
      rep.vec.error_estimates.data() + rep.vec.error_estimates.size());
  j["exponent"] = std::vector<double>(rep.vec.exponents.data(),
                                      rep.vec.exponents.data() + rep.vec.exponents.size());
  j["converged"] = rep.vec.converged;
  j["causal_class"] = to_string(rep.vec.causal);
  j["lorentz_norm"] = rep.vec.lorentz_norm;
  if (rep.ricci_mass) j["ricci_mass"] = *rep.ricci_mass;
  else j["ricci_mass"] = nullptr;
  if (rep.d_n) j["d_n"] = *rep.d_n;
  else j["d_n"] = nullptr;
  j["residuals"] = rep.residuals;
  j["decay_check"] = {{"pass", rep.decay.pass},
                      {"constant", rep.decay.measured_constant},
                      {"growth", rep.decay.growth_ratio},
                      {"detail", rep.decay.detail}};
  j["config"] = rep.config_echo;
  json checks;
  for (const auto& [name, outcome] : result.checks)
    checks[name] = {{"pass", outcome.pass}, {"detail", outcome.detail}};
  j["checks"] = checks;
  j["ok"] = result.ok;
  return j.dump(2) + "\n";
}

std::string report_to_table(const RunResult& result) {
  const MassReport& rep = result.report;
  std::ostringstream os;
  os << "metric: " << rep.metric << "   dimension: " << rep.dimension << "\n";
  os << "causal class: " << to_string(rep.vec.causal)
     << "   <<P,P>>: " << std::setprecision(10) << rep.vec.lorentz_norm << "\n\n";
  const bool has_table = static_cast<int>(rep.mass.size()) == rep.dimension &&
                         rep.vec.components.size() == rep.dimension &&
                         !rep.radii.empty();
  for (int a = 0; has_table && a < rep.dimension; ++a) {
    os << "potential V_(" << a << ")\n";
    os << std::setw(12) << "radius" << std::setw(20) << "flux" << std::setw(20) << "equator"
       << std::setw(20) << "mass" << "\n";
    for (size_t jr = 0; jr < rep.radii.size(); ++jr) {
      os << std::setw(12) << std::setprecision(6) << rep.radii[jr] << std::setw(20)
         << std::setprecision(12) << rep.flux[a][jr] << std::setw(20) << rep.equator[a][jr]
         << std::setw(20) << rep.mass[a][jr] << "\n";
    }
    os << std::setw(12) << "extrap" << std::setw(20) << "" << std::setw(20) << ""
       << std::setw(20) << std::setprecision(12) << rep.vec.components[a] << "\n";
    os << std::setw(12) << "error" << std::setw(20) << "" << std::setw(20) << ""
       << std::setw(20) << rep.vec.error_estimates[a] << "   q=" << std::setprecision(4)
       << rep.vec.exponents[a] << (rep.vec.converged[a] ? "" : "   NON_CONVERGED") << "\n\n";
  }
  if (!rep.residuals.empty()) {
    os << "residuals:\n";
    for (const auto& [name, value] : rep.residuals)
      os << "  " << std::left << std::setw(36) << name << std::right << std::setprecision(6)
         << value << "\n";
  }
  os << "\nchecks:\n";
  for (const auto& [name, outcome] : result.checks)
    os << "  " << std::left << std::setw(12) << name << (outcome.pass ? "PASS" : "FAIL")
       << "  " << outcome.detail << "\n";
  os << "\noverall: " << (result.ok ? "PASS" : "FAIL") << "\n";
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot write " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hypmass
