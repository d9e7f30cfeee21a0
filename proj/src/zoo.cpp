#include "hypmass/zoo.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "hypmass/potentials.hpp"

namespace hypmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// diag(rho(r), r^2 m_j(theta)) built as the reference metric with the radial
// slot replaced; the angular block and its derivatives are untouched.
MetricField radial_metric(int n, std::function<double(double)> rho,
                          std::function<double(double)> drho,
                          std::function<double(double)> ddrho, const std::string& name) {
  MetricField g = reference_metric(n, Chart::POLAR);
  g.name = name;
  auto base = g.components;
  g.components = [base, rho](const ChartPoint& p) {
    Eigen::MatrixXd v = base(p);
    v(0, 0) = rho(p.x[0]);
    return v;
  };
  auto base_d1 = g.d1;
  g.d1 = [base_d1, drho](const ChartPoint& p) {
    Tensor3 t = base_d1(p);
    t(0, 0, 0) = drho(p.x[0]);
    return t;
  };
  auto base_d2 = g.d2;
  g.d2 = [base_d2, ddrho](const ChartPoint& p) {
    Tensor4 t = base_d2(p);
    t(0, 0, 0, 0) = ddrho(p.x[0]);
    return t;
  };
  return g;
}

// Catmull-Rom cubic through 4 equally spaced samples, local coordinate
// u in [0, 1] between samples 1 and 2.
double catmull_rom(double p0, double p1, double p2, double p3, double u) {
  const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  const double c = -0.5 * p0 + 0.5 * p2;
  return ((a * u + b) * u + c) * u + p1;
}

// Uniform 2-d grid with even reflection in psi (both ends) and periodic phi.
struct Grid2 {
  int npsi = 0, nphi = 0;
  std::vector<double> values;  // row-major, psi rows

  double at(int i, int j) const {
    // reflect in psi
    if (i < 0) i = -i;
    if (i >= npsi) i = 2 * (npsi - 1) - i;
    // wrap phi
    j = ((j % nphi) + nphi) % nphi;
    return values[static_cast<size_t>(i) * nphi + j];
  }

  double interpolate(double psi, double phi) const {
    const double dpsi = (kPi / 2) / (npsi - 1);
    const double dphi = (2 * kPi) / nphi;
    const double fi = psi / dpsi;
    const double fj = phi / dphi;
    const int i = static_cast<int>(std::floor(fi));
    const int j = static_cast<int>(std::floor(fj));
    const double u = fi - i, v = fj - j;
    double col[4];
    for (int a = 0; a < 4; ++a) {
      col[a] = catmull_rom(at(i - 1 + a, j - 1), at(i - 1 + a, j), at(i - 1 + a, j + 1),
                           at(i - 1 + a, j + 2), v);
    }
    return catmull_rom(col[0], col[1], col[2], col[3], u);
  }
};

}  // namespace

MetricField zoo_reference(int n, Chart chart) { return reference_metric(n, chart); }

double ads_horizon_radius(int n, double mbar) {
  if (mbar <= 0.0) return 0.0;
  // V(r) = 1 + r^2 - 2 mbar r^{2-n}, increasing from -inf; bisect the root
  double lo = 1e-8, hi = 1.0;
  auto V = [&](double r) { return 1.0 + r * r - 2.0 * mbar * std::pow(r, 2 - n); };
  while (V(hi) < 0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (V(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

MetricField ads_schwarzschild_half(int n, double mbar) {
  if (mbar < 0) fail("ads_schwarzschild_half: mass parameter must be >= 0");
  if (mbar == 0.0) return reference_metric(n, Chart::POLAR);
  const double rh = ads_horizon_radius(n, mbar);
  const double rmin = rh + 0.1;
  auto Vm = [n, mbar, rmin](double r) {
    if (r < rmin) fail("ads_schwarzschild_half: radius at or below the horizon margin");
    return 1.0 + r * r - 2.0 * mbar * std::pow(r, 2 - n);
  };
  auto dVm = [n, mbar](double r) { return 2.0 * r + 2.0 * mbar * (n - 2) * std::pow(r, 1 - n); };
  auto ddVm = [n, mbar](double r) {
    return 2.0 - 2.0 * mbar * (n - 2) * (n - 1) * std::pow(r, -n);
  };
  MetricField g = radial_metric(
      n, [Vm](double r) { return 1.0 / Vm(r); },
      [Vm, dVm](double r) {
        const double v = Vm(r);
        return -dVm(r) / (v * v);
      },
      [Vm, dVm, ddVm](double r) {
        const double v = Vm(r);
        const double dv = dVm(r);
        return -ddVm(r) / (v * v) + 2.0 * dv * dv / (v * v * v);
      },
      "ads_schwarzschild");
  g.tau = n;
  g.radial_extent = std::max(rmin, 2.0);
  // the slice satisfies R + n(n-1) = 0 but is not Einstein (the traceless
  // Ricci tensor decays like r^{-n})
  g.einstein = false;
  return g;
}

RadialProfile power_profile(double amplitude, double exponent) {
  RadialProfile p;
  p.f = [=](double r) { return amplitude * std::pow(r, -exponent); };
  p.df = [=](double r) { return -amplitude * exponent * std::pow(r, -exponent - 1); };
  p.ddf = [=](double r) {
    return amplitude * exponent * (exponent + 1) * std::pow(r, -exponent - 2);
  };
  p.tau = exponent;
  return p;
}

RadialProfile bump_profile(double amplitude, double r1, double r2) {
  RadialProfile p;
  const double mid = 0.5 * (r1 + r2), half = 0.5 * (r2 - r1);
  p.f = [=](double r) {
    const double u = (r - mid) / half;
    if (std::abs(u) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * kPi * u);
    return amplitude * c * c * c * c;
  };
  p.df = [=](double r) {
    const double u = (r - mid) / half;
    if (std::abs(u) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * kPi * u), s = std::sin(0.5 * kPi * u);
    return amplitude * 4 * c * c * c * (-s) * (0.5 * kPi / half);
  };
  p.ddf = [=](double r) {
    const double u = (r - mid) / half;
    if (std::abs(u) >= 1.0) return 0.0;
    const double a = 0.5 * kPi / half;
    const double c = std::cos(0.5 * kPi * u), s = std::sin(0.5 * kPi * u);
    return amplitude * a * a * (12 * c * c * s * s - 4 * c * c * c * c);
  };
  p.tau = 0.0;  // compactly supported; decay trivially satisfied
  return p;
}

MetricField trace_perturbation(int n, const RadialProfile& profile) {
  if (profile.tau > 0 && profile.tau <= 0.5 * n)
    fail("trace_perturbation: decay must exceed n/2");
  MetricField b = reference_metric(n, Chart::POLAR);
  MetricField g = b;
  g.name = "trace_perturbation";
  g.tau = profile.tau > 0 ? profile.tau : n + 1.0;
  g.radial_extent = 2.0;
  auto f = profile.f;
  auto df = profile.df;
  auto ddf = profile.ddf;
  auto bc = b.components;
  g.components = [bc, f](const ChartPoint& p) {
    return Eigen::MatrixXd((1.0 + f(p.x[0])) * bc(p));
  };
  auto bd1 = b.d1;
  g.d1 = [bc, bd1, f, df](const ChartPoint& p) {
    const double r = p.x[0];
    Tensor3 t = bd1(p);
    const double fac = 1.0 + f(r);
    for (auto& v : t.v) v *= fac;
    const Eigen::MatrixXd B = bc(p);
    const int n2 = B.rows();
    const double dfr = df(r);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) t(0, i, j) += dfr * B(i, j);
    return t;
  };
  auto bd2 = b.d2;
  g.d2 = [bc, bd1, bd2, f, df, ddf](const ChartPoint& p) {
    const double r = p.x[0];
    Tensor4 t = bd2(p);
    const double fac = 1.0 + f(r);
    for (auto& v : t.v) v *= fac;
    const Tensor3 dB = bd1(p);
    const Eigen::MatrixXd B = bc(p);
    const int n2 = B.rows();
    const double dfr = df(r), ddfr = ddf(r);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) {
        for (int c = 0; c < n2; ++c) {
          t(0, c, i, j) += dfr * dB(c, i, j);
          t(c, 0, i, j) += dfr * dB(c, i, j);
        }
        t(0, 0, i, j) += ddfr * B(i, j);
      }
    return t;
  };
  return g;
}

void ConformallyCompactData::validate() const {
  const int n = dim;
  if (n < 3) fail("conformally compact data: dimension must be >= 3");
  if (k && k_exponent <= n + 1)
    fail("conformally compact data: remainder certificate must exceed n+1");
  // sampled symmetry and remainder decay
  for (int s = 0; s < 12; ++s) {
    Eigen::VectorXd angles(n - 1);
    angles[0] = 0.1 + (kPi / 2 - 0.2) * (s % 4) / 3.0;
    for (int kk = 1; kk < n - 2; ++kk) angles[kk] = 0.4 + 0.5 * ((s + kk) % 3);
    angles[n - 2] = 2 * kPi * ((s * 5) % 12) / 12.0;
    if (h) {
      const Eigen::MatrixXd hv = h(angles);
      if ((hv - hv.transpose()).norm() > 1e-10 * (1.0 + hv.norm()))
        fail("conformally compact data: h not symmetric");
    }
    if (k) {
      for (double t : {t_max, 0.5 * t_max, 0.1 * t_max}) {
        const Eigen::MatrixXd kv = k(t, angles);
        if ((kv - kv.transpose()).norm() > 1e-10 * (1.0 + kv.norm()))
          fail("conformally compact data: k not symmetric");
        if (kv.norm() > 3.0 * k_bound * std::pow(t, k_exponent) + 1e-14)
          fail("conformally compact data: remainder decay certificate violated");
      }
    }
  }
}

ConformallyCompactData round_conformal_data(int n, double c) {
  ConformallyCompactData d;
  d.dim = n;
  d.t_max = 0.15;
  d.h = [n, c](const Eigen::VectorXd& angles) {
    // c * h_0 in the angle coordinate basis: diag(m_j)
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n - 1, n - 1);
    double m = 1.0;
    out(0, 0) = c;
    for (int j = 1; j < n - 1; ++j) {
      m *= std::sin(angles[j - 1]) * std::sin(angles[j - 1]);
      out(j, j) = c * m;
    }
    return out;
  };
  d.k = nullptr;
  return d;
}

MetricField conformally_compact(const ConformallyCompactData& data) {
  data.validate();
  const int n = data.dim;
  MetricField g = reference_metric(n, Chart::POLAR);
  g.name = "conformally_compact";
  g.tau = n;
  g.radial_extent = 1.02 / std::sinh(data.t_max);
  g.einstein = false;
  g.d1 = nullptr;
  g.d2 = nullptr;
  auto base = reference_metric(n, Chart::POLAR).components;
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  auto h = data.h;
  auto k = data.k;
  const double kexp = data.k_exponent;
  g.components = [base, h, k, n, nfact, kexp](const ChartPoint& p) {
    const double r = p.x[0];
    const double t = std::asinh(1.0 / r);
    Eigen::MatrixXd out = base(p);  // exact radial slot and h_0 block
    const Eigen::VectorXd angles = p.x.tail(n - 1);
    Eigen::MatrixXd extra = Eigen::MatrixXd::Zero(n - 1, n - 1);
    if (h) extra += (std::pow(t, n) / nfact) * h(angles);
    if (k) extra += k(t, angles);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) out(i, j) += r * r * extra(i - 1, j - 1);
    return out;
  };
  (void)kexp;
  return g;
}

ConformallyCompactData load_conformal_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("load_conformal_data: cannot open " + path);
  int dim = 0, npsi = 0, nphi = 0;
  double t_max = 0.0, k_exponent = 0.0, k_bound = 1.0;
  std::map<std::string, Grid2> blocks;
  std::string line;
  std::string pending_block;
  std::vector<double> numbers;
  auto flush_block = [&]() {
    if (pending_block.empty()) return;
    if (static_cast<int>(numbers.size()) != npsi * nphi)
      fail("load_conformal_data: block " + pending_block + " has wrong size");
    Grid2 ggrid;
    ggrid.npsi = npsi;
    ggrid.nphi = nphi;
    ggrid.values = numbers;
    blocks[pending_block] = std::move(ggrid);
    pending_block.clear();
    numbers.clear();
  };
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "dimension") { flush_block(); ls >> dim; }
    else if (tok == "t_max") { flush_block(); ls >> t_max; }
    else if (tok == "k_exponent") { flush_block(); ls >> k_exponent; }
    else if (tok == "k_bound") { flush_block(); ls >> k_bound; }
    else if (tok == "grid_psi") { flush_block(); ls >> npsi; }
    else if (tok == "grid_phi") { flush_block(); ls >> nphi; }
    else if (tok == "block") { flush_block(); ls >> pending_block; }
    else {
      // numeric row (first token already consumed)
      numbers.push_back(std::stod(tok));
      double v;
      while (ls >> v) numbers.push_back(v);
    }
  }
  flush_block();
  if (dim != 3) fail("load_conformal_data: sampled ingestion supports dimension 3");
  if (npsi < 4 || nphi < 4) fail("load_conformal_data: grid too small");
  if (t_max <= 0) fail("load_conformal_data: t_max missing");

  auto need = [&](const std::string& name) {
    if (!blocks.count(name)) fail("load_conformal_data: missing block " + name);
    return blocks[name];
  };
  const Grid2 hpp = need("h_psi_psi"), hpf = need("h_psi_phi"), hff = need("h_phi_phi");
  const bool has_k = blocks.count("k_psi_psi") > 0;
  Grid2 kpp, kpf, kff;
  if (has_k) {
    kpp = need("k_psi_psi");
    kpf = need("k_psi_phi");
    kff = need("k_phi_phi");
  }

  ConformallyCompactData d;
  d.dim = 3;
  d.t_max = t_max;
  d.k_exponent = k_exponent;
  d.k_bound = k_bound;
  d.h = [hpp, hpf, hff](const Eigen::VectorXd& angles) {
    Eigen::MatrixXd out(2, 2);
    const double psi = angles[0], phi = angles[1];
    out(0, 0) = hpp.interpolate(psi, phi);
    out(0, 1) = out(1, 0) = hpf.interpolate(psi, phi);
    out(1, 1) = hff.interpolate(psi, phi);
    return out;
  };
  if (has_k) {
    const double p = k_exponent;
    d.k = [kpp, kpf, kff, p](double t, const Eigen::VectorXd& angles) {
      Eigen::MatrixXd out(2, 2);
      const double psi = angles[0], phi = angles[1];
      const double scale = std::pow(t, p);
      out(0, 0) = scale * kpp.interpolate(psi, phi);
      out(0, 1) = out(1, 0) = scale * kpf.interpolate(psi, phi);
      out(1, 1) = scale * kff.interpolate(psi, phi);
      return out;
    };
  }
  return d;
}

void DiffeoSpec::validate(int n) const {
  for (int s = 0; s < 10; ++s) {
    const double r = 10.0 * std::pow(2.0, s % 4);
    Eigen::VectorXd angles(n - 1);
    angles[0] = kPi / 2;  // face points for the tangency check
    for (int kk = 1; kk < n - 1; ++kk) angles[kk] = 0.3 + 0.5 * ((s + kk) % 4);
    const ChartPoint p = polar_point(r, angles);
    const Eigen::VectorXd z = zeta(p);
    if (boundary_tangent && std::abs(z[1]) * r > 1e-10)
      fail("diffeo spec: field not tangent to the boundary face");
    const MetricField b = reference_metric(n, Chart::POLAR);
    const double norm = std::sqrt(z.dot(b.components(p) * z));
    if (decay > 0 && norm > 100.0 * std::pow(r, -decay))
      fail("diffeo spec: field violates its decay claim");
  }
}

DiffeoSpec standard_diffeo(int n, double amplitude, double decay) {
  DiffeoSpec d;
  d.decay = decay;
  d.boundary_tangent = true;
  d.zeta = [n, amplitude, decay](const ChartPoint& p) {
    const double r = p.x[0];
    const double psi = p.x[1];
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    // azimuthal rotation scaled by a radial profile (not Killing) plus a
    // polar component vanishing on the face (tangency)
    const double rho = amplitude * std::pow(r, -(decay + 1.0));
    z[n - 1] = rho;
    z[1] = rho * std::cos(psi);
    return z;
  };
  return d;
}

namespace {

// Time-1 geodesic flow of the reference metric with initial velocity
// zeta(p), integrated together with its variational (tangent map) system so
// the Jacobian carries no differencing noise. 4th-order fixed-step scheme.
struct FlowResult {
  Eigen::VectorXd x;
  Eigen::MatrixXd jac;  // d x(1) / d p
};

FlowResult flow_with_jacobian(const ChartPoint& p, const VectorField& zeta, double step,
                              const FdConfig& fd) {
  const int n = p.dim();
  const MetricField b = reference_metric(n, p.chart);

  struct State {
    Eigen::VectorXd x, v;
    Eigen::MatrixXd jx, jv;
  };
  auto deriv = [&](const State& s) {
    ChartPoint q = p;
    q.x = s.x;
    const Tensor3 gamma = christoffel(b, q);
    const Tensor4 dgamma = christoffel_d1(b, q);
    State d;
    d.x = s.v;
    d.v = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
      double a = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a += gamma(k, i, j) * s.v[i] * s.v[j];
      d.v[k] = -a;
    }
    d.jx = s.jv;
    d.jv = Eigen::MatrixXd::Zero(n, n);
    // d a^k / d x^m (through Gamma) and d a^k / d v^m
    for (int k = 0; k < n; ++k)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) {
          double dadx = 0.0, dadv = 0.0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dadx -= dgamma(m, k, i, j) * s.v[i] * s.v[j];
          for (int j = 0; j < n; ++j) dadv -= 2.0 * gamma(k, m, j) * s.v[j];
          acc += dadx * s.jx(m, c) + dadv * s.jv(m, c);
        }
        d.jv(k, c) = acc;
      }
    return d;
  };
  auto axpy = [&](const State& s, double h, const State& k) {
    State out = s;
    out.x += h * k.x;
    out.v += h * k.v;
    out.jx += h * k.jx;
    out.jv += h * k.jv;
    return out;
  };

  State s;
  s.x = p.x;
  s.v = zeta(p);
  s.jx = Eigen::MatrixXd::Identity(n, n);
  s.jv = fd_vector_d1(zeta, p, fd).transpose();  // (i, c) = d zeta^i / d p^c

  const int steps = std::max(1, static_cast<int>(std::round(1.0 / step)));
  const double h = 1.0 / steps;
  for (int it = 0; it < steps; ++it) {
    const State k1 = deriv(s);
    const State k2 = deriv(axpy(s, 0.5 * h, k1));
    const State k3 = deriv(axpy(s, 0.5 * h, k2));
    const State k4 = deriv(axpy(s, h, k3));
    s.x += (h / 6.0) * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    s.v += (h / 6.0) * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
    s.jx += (h / 6.0) * (k1.jx + 2 * k2.jx + 2 * k3.jx + k4.jx);
    s.jv += (h / 6.0) * (k1.jv + 2 * k2.jv + 2 * k3.jv + k4.jv);
  }
  FlowResult out;
  out.x = s.x;
  out.jac = s.jx;
  return out;
}

}  // namespace

ChartPoint exp_flow(const ChartPoint& p, const VectorField& zeta, double step) {
  ChartPoint out = p;
  out.x = flow_with_jacobian(p, zeta, step, {}).x;
  return out;
}

MetricField pushforward(const MetricField& m, const DiffeoSpec& spec) {
  spec.validate(m.dim);
  MetricField out = m;
  out.name = m.name + "+diffeo";
  out.tau = std::min(m.tau, spec.decay);
  out.d1 = nullptr;
  out.d2 = nullptr;
  auto comp = m.components;
  auto zeta = spec.zeta;
  out.components = [comp, zeta](const ChartPoint& p) {
    const FlowResult fr = flow_with_jacobian(p, zeta, 1e-2, {});
    ChartPoint fp = p;
    fp.x = fr.x;
    return Eigen::MatrixXd(fr.jac.transpose() * comp(fp) * fr.jac);
  };
  return out;
}

}  // namespace hypmass
