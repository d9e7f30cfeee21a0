#include "hypmass/runner.hpp"

#include <cmath>
#include <filesystem>
#include <memory>
#include <random>
#include <sstream>

#include "hypmass/charge.hpp"
#include "hypmass/killing.hpp"
#include "hypmass/zoo.hpp"

namespace hypmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

ChartPoint random_polar(int n, std::mt19937& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> ur(rmin, rmax);
  std::uniform_real_distribution<double> upsi(0.05, kPi / 2 - 0.05);
  std::uniform_real_distribution<double> ucol(0.3, kPi - 0.3);
  std::uniform_real_distribution<double> uaz(0.0, 2 * kPi);
  Eigen::VectorXd angles(n - 1);
  angles[0] = upsi(rng);
  for (int k = 1; k < n - 2; ++k) angles[k] = ucol(rng);
  if (n >= 3) angles[n - 2] = uaz(rng);
  return polar_point(ur(rng), angles);
}

ChartPoint random_ball(int n, std::mt19937& rng, double max_norm) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> ur(0.05, max_norm);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = g(rng);
  x[n - 1] = std::abs(x[n - 1]);
  x *= ur(rng) / x.norm();
  return ball_point(x);
}

// Smooth bounded random vector field: trigonometric in the angles, rational
// in r, twice differentiable.
VectorField random_smooth_field(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  std::uniform_int_distribution<int> upow(0, 2);
  struct Term {
    int comp, pw, trig_idx, trig_kind;
    double coeff;
  };
  auto terms = std::make_shared<std::vector<Term>>();
  const int nterms = 3 * n;
  for (int t = 0; t < nterms; ++t) {
    Term tm;
    tm.comp = t % n;
    tm.pw = upow(rng);
    tm.trig_idx = 1 + (t % (n - 1));
    tm.trig_kind = (t / n) % 2;
    tm.coeff = uc(rng);
    terms->push_back(tm);
  }
  return [terms, n](const ChartPoint& p) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    const double r = p.x[0];
    for (const auto& tm : *terms) {
      const double rad = std::pow(10.0 / r, tm.pw);
      const double ang = p.x[tm.trig_idx];
      const double trig = tm.trig_kind == 0 ? std::sin(ang) : std::cos(ang);
      out[tm.comp] += tm.coeff * rad * trig;
    }
    return out;
  };
}

}  // namespace

MetricField build_metric(const RunConfig& cfg) {
  const int n = cfg.dimension;
  if (cfg.metric == "reference") return zoo_reference(n);
  if (cfg.metric == "ads_schwarzschild") return ads_schwarzschild_half(n, cfg.mass_parameter);
  if (cfg.metric == "trace_perturbation") {
    const double expo = cfg.exponent > 0 ? cfg.exponent : n;
    return trace_perturbation(n, power_profile(cfg.amplitude, expo));
  }
  if (cfg.metric == "conformally_compact") {
    if (cfg.data_file.empty())
      fail("config validation error: field 'data_file' required for conformally_compact");
    return conformally_compact(load_conformal_data(cfg.data_file));
  }
  fail("config validation error: field 'metric' has unknown selector '" + cfg.metric + "'");
}

double exactness_suite(int n, int count, unsigned seed) {
  std::mt19937 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    const VectorField X = random_smooth_field(n, rng);
    const ChartPoint p = random_polar(n, rng, 10.0, 40.0);
    for (int a = 0; a < n; ++a) {
      const StaticPotential V = basis_potential(n, a);
      worst = std::max(worst, exactness_residual(V, X, p));
    }
  }
  return worst;
}

ExpansionSlope expansion_suite(int n, unsigned seed) {
  std::mt19937 rng(seed);
  const std::vector<double> eps = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  // generic decaying field: radial trace profile plus an off-diagonal bump
  TensorField e;
  e.dim = n;
  e.chart = Chart::POLAR;
  e.eval = [n](const ChartPoint& p) {
    const MetricField b = reference_metric(n, Chart::POLAR);
    const double r = p.x[0];
    const double f = std::pow(10.0 / r, n);
    Eigen::MatrixXd out = f * b.components(p);
    const double bump = 0.3 * f * std::sin(p.x[1]) * std::cos(p.x[n - 1]);
    out(0, 2) += bump;
    out(2, 0) += bump;
    return out;
  };

  const int npts = 5;
  std::vector<std::vector<double>> residuals(npts, std::vector<double>(eps.size()));
  const StaticPotential V0 = basis_potential(n, 0);
  for (int i = 0; i < npts; ++i) {
    const ChartPoint p = random_polar(n, rng, 10.0, 25.0);
    for (size_t k = 0; k < eps.size(); ++k)
      residuals[i][k] = expansion_residual(e, V0, p, eps[k]);
  }

  auto fit_slope = [&](const std::vector<double>& res) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(eps.size());
    for (int k = 0; k < m; ++k) {
      const double x = std::log(eps[k]);
      const double y = std::log(std::max(res[k], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  };

  ExpansionSlope out;
  std::vector<double> mean(eps.size(), 0.0);
  out.min_slope = 1e9;
  out.max_slope = -1e9;
  for (int i = 0; i < npts; ++i) {
    const double s = fit_slope(residuals[i]);
    out.min_slope = std::min(out.min_slope, s);
    out.max_slope = std::max(out.max_slope, s);
    for (size_t k = 0; k < eps.size(); ++k) mean[k] += residuals[i][k] / npts;
  }
  out.slope = fit_slope(mean);
  return out;
}

SpinSuite spin_suite(int n, unsigned seed) {
  std::mt19937 rng(seed);
  SpinSuite out;
  const CliffordRep rep = build_clifford(n);
  out.clifford_residual = clifford_invariant_residual(rep);
  out.expected_count = rep.rank;

  const BoundaryChirality bc = boundary_chirality(rep);
  out.eigenspace_dims_ok =
      bc.basis_plus.cols() == rep.rank / 2 && bc.basis_minus.cols() == rep.rank / 2;

  // <c(nu) Psi, Psi> on chirality eigenspaces
  const CMatrix cnu = rep.action(n - 1);
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    CVector coef_p(bc.basis_plus.cols()), coef_m(bc.basis_minus.cols());
    for (int i = 0; i < coef_p.size(); ++i) coef_p[i] = std::complex<double>(uc(rng), uc(rng));
    for (int i = 0; i < coef_m.size(); ++i) coef_m[i] = std::complex<double>(uc(rng), uc(rng));
    const CVector psi_p = bc.basis_plus * coef_p;
    const CVector psi_m = bc.basis_minus * coef_m;
    out.max_pairing_residual =
        std::max({out.max_pairing_residual, std::abs(psi_p.dot(cnu * psi_p)),
                  std::abs(psi_m.dot(cnu * psi_m))});
  }

  // Killing residuals over the maximal basis, both family signs
  std::vector<KillingSpec> specs = basis_killing_specs(rep);
  out.basis_count = static_cast<int>(specs.size());
  const size_t base = specs.size();
  for (size_t i = 0; i < base; ++i) {
    KillingSpec s = specs[i];
    s.sign = -1;
    specs.push_back(s);
  }
  const int samples = 200;
  for (int t = 0; t < samples; ++t) {
    const ChartPoint p = random_ball(n, rng, 0.9);
    const KillingSpec& s = specs[t % specs.size()];
    std::uniform_int_distribution<int> udir(0, n - 1);
    const double res = killing_residual(rep, s, p, udir(rng));
    out.max_killing_residual = std::max(out.max_killing_residual, res);
  }

  // pointwise squared-norm identity and Lorentz-norm sign over random
  // chirality-compatible data
  out.min_lorentz_norm = 1e300;
  for (int t = 0; t < 100; ++t) {
    KillingSpec s;
    s.sign = (t % 2 == 0) ? +1 : -1;
    if (!rep.doubled) {
      CVector coef(bc.basis_plus.cols());
      for (int i = 0; i < coef.size(); ++i) coef[i] = std::complex<double>(uc(rng), uc(rng));
      s.u = bc.basis_plus * coef;
      s.chirality = +1;
    } else {
      s.u = CVector(rep.rank_spin);
      for (int i = 0; i < s.u.size(); ++i) s.u[i] = std::complex<double>(uc(rng), uc(rng));
      s.v = rep.gamma[n - 1] * s.u;
      s.chirality = +1;
    }
    if (s.u.norm() < 1e-6) continue;
    const StaticPotential V = v_phi(rep, s);
    out.min_lorentz_norm =
        std::min(out.min_lorentz_norm, lorentz_product(V.coeffs, V.coeffs));
    for (int pt = 0; pt < 2; ++pt) {
      const ChartPoint p = random_ball(n, rng, 0.9);
      const CVector phi = killing_spinor_eval(rep, s, p);
      double rhs = 0.0;
      for (int a = 0; a < n; ++a) rhs += V.coeffs[a] * static_basis_eval(a, p);
      const double scale = std::max(1.0, phi.squaredNorm());
      out.max_vphi_residual =
          std::max(out.max_vphi_residual, std::abs(phi.squaredNorm() - rhs) / scale);
    }
  }

  // null-cone round trips
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dir(n - 1);
    for (int i = 0; i < n - 1; ++i) dir[i] = uc(rng);
    if (dir.norm() < 1e-3) dir[0] = 1.0;
    dir.normalize();
    std::uniform_real_distribution<double> us(0.5, 2.0);
    z[0] = us(rng);
    z.tail(n - 1) = z[0] * dir;
    StaticPotential V;
    V.dim = n;
    V.coeffs = z;
    const KillingSpec s = null_cone_inverse(rep, V);
    const StaticPotential back = v_phi(rep, s);
    out.max_roundtrip_residual =
        std::max(out.max_roundtrip_residual, (back.coeffs - z).norm() / z.norm());
  }
  return out;
}

InvarianceSuite invariance_suite(const MetricField& m, double rapidity, int resolution,
                                 const std::vector<double>& radii, const EngineConfig& cfg) {
  const int n = m.dim;
  InvarianceSuite out;
  const MassReport base = mass_vector(m, resolution, radii, cfg);
  out.base = base.vec.components;

  const IsometryElement boost = isometry_boost(n, 1, rapidity);
  const DiffeoSpec zeta = standard_diffeo(n, 0.5, n);
  const MetricField moved = rechart_by_isometry(pushforward(m, zeta), boost);
  const MassReport trans = mass_vector(moved, resolution, radii, cfg);
  out.transformed = trans.vec.components;

  // re-charting by the point action of I sends P_a to the coefficients of
  // V_(a) o I^{-1} paired with P (naturality of the charge form)
  const IsometryElement inv = boost.inverse();
  out.expected.resize(n);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b) s += inv.matrix(a, b) * out.base[b];
    out.expected[a] = s;
  }
  const double scale = std::max(1e-12, out.expected.cwiseAbs().maxCoeff());
  out.max_component_error = (out.transformed - out.expected).cwiseAbs().maxCoeff() / scale;
  const double qb = lorentz_product(out.base, out.base);
  const double qt = lorentz_product(out.transformed, out.transformed);
  out.norm_error = std::abs(qt - qb) / std::max(1e-12, std::abs(qb));
  return out;
}

RunResult run(const RunConfig& cfg) {
  RunResult result;
  std::ostringstream echo;
  echo << "dimension=" << cfg.dimension << " metric=" << cfg.metric
       << " resolution=" << cfg.resolution << " workers=" << cfg.workers
       << " seed=" << cfg.seed;
  EngineConfig ecfg;
  ecfg.workers = cfg.workers;

  try {
    const MetricField m = build_metric(cfg);
    result.report.metric = m.name;
    result.report.dimension = cfg.dimension;
    result.report.config_echo = echo.str();

    for (CheckKind kind : cfg.checks) {
      CheckOutcome outcome;
      std::ostringstream detail;
      switch (kind) {
        case CheckKind::MASS: {
          result.report = [&] {
            MassReport rep = mass_vector(m, cfg.resolution, cfg.radii, ecfg);
            rep.config_echo = echo.str();
            return rep;
          }();
          bool conv = true;
          for (bool c : result.report.vec.converged) conv = conv && c;
          outcome.pass = conv;
          detail << "causal=" << to_string(result.report.vec.causal)
                 << " |P|=" << result.report.vec.components.norm()
                 << (conv ? "" : " NON_CONVERGED");
          break;
        }
        case CheckKind::RICCI: {
          const double tol = cfg.tolerance("ricci_einstein", 1e-6);
          std::vector<std::vector<double>> table(cfg.dimension);
          double worst_ghat = 0.0;
          std::vector<double> ratios;
          for (size_t j = 0; j < cfg.radii.size(); ++j) {
            const QuadratureRule rule = build_quadrature(cfg.dimension, cfg.radii[j],
                                                         cfg.resolution);
            worst_ghat = std::max(worst_ghat, max_modified_einstein_norm(m, rule, ecfg));
            const std::vector<RadiusMass> charge = mass_all_at_radius(m, rule, ecfg);
            for (int a = 0; a < cfg.dimension; ++a)
              table[a].push_back(ricci_mass_at_radius(m, a, rule, ecfg));
            if (std::abs(table[0][j]) > 1e-10)
              ratios.push_back(charge[0].mass() / table[0][j]);
          }
          result.report.ricci_mass = table;
          result.report.residuals["ricci_einstein_integrand"] = worst_ghat;
          if (!ratios.empty()) {
            double num = 0.0;
            for (double v : ratios) num += v / ratios.size();
            result.report.d_n = num;
          }
          if (m.einstein) {
            outcome.pass = worst_ghat < tol;
            detail << "einstein integrand max=" << worst_ghat
                   << " (ratio degenerate: ricci mass vanishes identically)";
          } else if (ratios.size() >= 2) {
            double lo = ratios[0], hi = ratios[0];
            for (double v : ratios) {
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            }
            const double spread = std::abs(hi - lo) / std::max(1e-12, std::abs(0.5 * (hi + lo)));
            outcome.pass = spread <= cfg.tolerance("ricci_ratio_spread", 0.02);
            detail << "ratio spread=" << spread << " d_n=" << (result.report.d_n ? *result.report.d_n : 0.0);
          } else {
            outcome.pass = true;
            detail << "charge mass below threshold; nothing to compare";
          }
          break;
        }
        case CheckKind::INVARIANCE: {
          const double tol = cfg.tolerance("invariance", 0.01);
          const InvarianceSuite inv =
              invariance_suite(m, 0.3, cfg.resolution, cfg.radii, ecfg);
          const double base_scale = inv.base.cwiseAbs().maxCoeff();
          if (base_scale < 1e-8) {
            outcome.pass = inv.transformed.cwiseAbs().maxCoeff() < 1e-6;
            detail << "zero-mass metric stays zero: |P'|="
                   << inv.transformed.cwiseAbs().maxCoeff();
          } else {
            outcome.pass = inv.max_component_error <= tol && inv.norm_error <= tol;
            detail << "component err=" << inv.max_component_error
                   << " norm err=" << inv.norm_error;
          }
          result.report.residuals["invariance_component"] = inv.max_component_error;
          result.report.residuals["invariance_norm"] = inv.norm_error;
          break;
        }
        case CheckKind::EXACTNESS: {
          const double tol = cfg.tolerance("exactness", 1e-5);
          const double worst = exactness_suite(cfg.dimension, 100, cfg.seed);
          outcome.pass = worst < tol;
          detail << "max residual=" << worst;
          result.report.residuals["exactness"] = worst;
          break;
        }
        case CheckKind::EXPANSION: {
          const ExpansionSlope slope = expansion_suite(cfg.dimension, cfg.seed);
          outcome.pass = slope.slope >= cfg.tolerance("expansion_lo", 1.9) &&
                         slope.slope <= cfg.tolerance("expansion_hi", 2.1);
          detail << "slope=" << slope.slope << " [" << slope.min_slope << ", "
                 << slope.max_slope << "]";
          result.report.residuals["expansion_slope"] = slope.slope;
          break;
        }
        case CheckKind::SPIN: {
          const SpinSuite spin = spin_suite(cfg.dimension, cfg.seed);
          outcome.pass = spin.clifford_residual < cfg.tolerance("spin_clifford", 1e-12) &&
                         spin.max_killing_residual < cfg.tolerance("spin_killing", 1e-6) &&
                         spin.max_vphi_residual < cfg.tolerance("spin_vphi", 1e-9) &&
                         spin.max_roundtrip_residual < cfg.tolerance("spin_roundtrip", 1e-8) &&
                         spin.eigenspace_dims_ok && spin.min_lorentz_norm > -1e-9;
          detail << "clifford=" << spin.clifford_residual
                 << " killing=" << spin.max_killing_residual
                 << " vphi=" << spin.max_vphi_residual
                 << " roundtrip=" << spin.max_roundtrip_residual
                 << " specs=" << spin.basis_count << "/" << spin.expected_count;
          result.report.residuals["spin_clifford"] = spin.clifford_residual;
          result.report.residuals["spin_killing"] = spin.max_killing_residual;
          result.report.residuals["spin_vphi"] = spin.max_vphi_residual;
          result.report.residuals["spin_roundtrip"] = spin.max_roundtrip_residual;
          break;
        }
      }
      outcome.detail = detail.str();
      result.checks[to_string(kind)] = outcome;
    }
  } catch (const std::exception& ex) {
    CheckOutcome outcome;
    outcome.pass = false;
    outcome.detail = std::string("error: ") + ex.what();
    result.checks["error"] = outcome;
  }

  result.ok = !result.checks.empty();
  for (const auto& [name, outcome] : result.checks) result.ok = result.ok && outcome.pass;

  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.format == "json" || cfg.format == "both")
    write_atomic(cfg.out_dir + "/report.json", report_to_json(result));
  if (cfg.format == "table" || cfg.format == "both")
    write_atomic(cfg.out_dir + "/report.txt", report_to_table(result));
  return result;
}

}  // namespace hypmass
