#include "hypmass/engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hypmass/parallel.hpp"

namespace hypmass {

namespace {

// Frame-component data shared by the basis potentials at one hemisphere node.
struct NodeData {
  Eigen::MatrixXd e_f;   // e(f_i, f_j)
  Tensor3 de_f;          // (grad e)(f_i, f_j; f_k)
  Eigen::VectorXd mu_f;  // b(mu, f_i)
  Eigen::MatrixXd frame; // chart components of the frame (columns)
  Eigen::MatrixXd B;     // reference metric matrix
};

NodeData hemisphere_node_data(const MetricField& m, const MetricField& b, const ChartPoint& p,
                              const FdConfig& fd) {
  const int n = m.dim;
  NodeData nd;
  nd.B = b.components(p);
  nd.frame = reference_frame(p);
  auto e_eval = [&](const ChartPoint& q) {
    return Eigen::MatrixXd(m.components(q) - b.components(q));
  };
  const Eigen::MatrixXd e = e_eval(p);
  Tensor3 de;
  if (m.has_d1()) {
    // covariant derivative from analytic partials
    const Tensor3 dg = m.d1(p);
    const Tensor3 db = b.d1(p);
    const Tensor3 gamma = christoffel(b, p, fd);
    de = Tensor3(n);
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) {
          double s = dg(c, a, bb) - db(c, a, bb);
          for (int mm = 0; mm < n; ++mm)
            s -= gamma(mm, c, a) * e(mm, bb) + gamma(mm, c, bb) * e(a, mm);
          de(c, a, bb) = s;
        }
  } else {
    de = covariant_d1_sym2(e_eval, b, p, fd);
  }
  nd.e_f = nd.frame.transpose() * e * nd.frame;
  nd.de_f = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int c = 0; c < n; ++c)
          for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
              s += de(c, a, bb) * nd.frame(c, k) * nd.frame(a, i) * nd.frame(bb, j);
        nd.de_f(i, j, k) = s;
      }
  const Eigen::VectorXd mu = radial_unit_b(p);
  nd.mu_f = nd.frame.transpose() * nd.B * mu;
  return nd;
}

// <U(V, e), mu> from frame components.
double flux_integrand(const NodeData& nd, const StaticPotential& V, const ChartPoint& p) {
  const int n = nd.e_f.rows();
  const double v = V.eval(p);
  const Eigen::VectorXd dV = V.d1(p);
  const Eigen::VectorXd dv_f = nd.frame.transpose() * dV;  // dV(f_i)
  const double tre = nd.e_f.trace();
  double out = 0.0;
  for (int i = 0; i < n; ++i) {
    double dive = 0.0, dtre = 0.0;
    for (int k = 0; k < n; ++k) {
      dive += nd.de_f(i, k, k);
      dtre += nd.de_f(k, k, i);
    }
    double u = v * (dive - dtre);
    for (int k = 0; k < n; ++k) u -= nd.e_f(i, k) * dv_f[k];
    u += tre * dv_f[i];
    out += u * nd.mu_f[i];
  }
  return out;
}

void check_rule(const MetricField& m, const QuadratureRule& rule) {
  if (rule.dim != m.dim) fail("mass_at_radius: rule dimension mismatch");
  if (rule.radius < m.radial_extent)
    fail("mass_at_radius: quadrature radius below the metric's asymptotic region");
}

}  // namespace

std::vector<RadiusMass> mass_all_at_radius(const MetricField& m, const QuadratureRule& rule,
                                           const EngineConfig& cfg) {
  check_rule(m, rule);
  const int n = m.dim;
  const MetricField b = reference_metric(n, m.chart);
  std::vector<StaticPotential> basis;
  for (int a = 0; a < n; ++a) basis.push_back(basis_potential(n, a));

  const int nh = static_cast<int>(rule.hemisphere.size());
  std::vector<std::vector<double>> flux_terms(n, std::vector<double>(nh, 0.0));
  parallel_for(nh, cfg.workers, [&](int i) {
    const QuadNode& nd = rule.hemisphere[i];
    const NodeData data = hemisphere_node_data(m, b, nd.p, cfg.fd);
    for (int a = 0; a < n; ++a)
      flux_terms[a][i] = flux_integrand(data, basis[a], nd.p) * nd.b_weight;
  });

  const int ne = static_cast<int>(rule.equator.size());
  std::vector<std::vector<double>> eq_terms(n, std::vector<double>(ne, 0.0));
  parallel_for(ne, cfg.workers, [&](int i) {
    const QuadNode& nd = rule.equator[i];
    const Eigen::MatrixXd e = m.components(nd.p) - b.components(nd.p);
    const Eigen::VectorXd eta = boundary_normal_b(nd.p);
    const Eigen::VectorXd vartheta = radial_unit_b(nd.p);
    const double pairing = eta.dot(e * vartheta);
    for (int a = 0; a < n; ++a)
      eq_terms[a][i] = basis[a].eval(nd.p) * pairing * nd.b_weight;
  });

  std::vector<RadiusMass> out(n);
  for (int a = 0; a < n; ++a) {
    out[a].flux = pairwise_sum(flux_terms[a]);
    out[a].equator = pairwise_sum(eq_terms[a]);
  }
  return out;
}

RadiusMass mass_at_radius(const MetricField& m, const StaticPotential& V,
                          const QuadratureRule& rule, const EngineConfig& cfg) {
  check_rule(m, rule);
  const int n = m.dim;
  const MetricField b = reference_metric(n, m.chart);

  const int nh = static_cast<int>(rule.hemisphere.size());
  std::vector<double> flux_terms(nh, 0.0);
  parallel_for(nh, cfg.workers, [&](int i) {
    const QuadNode& nd = rule.hemisphere[i];
    const NodeData data = hemisphere_node_data(m, b, nd.p, cfg.fd);
    flux_terms[i] = flux_integrand(data, V, nd.p) * nd.b_weight;
  });

  const int ne = static_cast<int>(rule.equator.size());
  std::vector<double> eq_terms(ne, 0.0);
  parallel_for(ne, cfg.workers, [&](int i) {
    const QuadNode& nd = rule.equator[i];
    const Eigen::MatrixXd e = m.components(nd.p) - b.components(nd.p);
    const Eigen::VectorXd eta = boundary_normal_b(nd.p);
    const Eigen::VectorXd vartheta = radial_unit_b(nd.p);
    eq_terms[i] = V.eval(nd.p) * eta.dot(e * vartheta) * nd.b_weight;
  });

  RadiusMass out;
  out.flux = pairwise_sum(flux_terms);
  out.equator = pairwise_sum(eq_terms);
  return out;
}

Extrapolation extrapolate_mass(const std::vector<std::pair<double, double>>& samples,
                               double q_init) {
  const int J = static_cast<int>(samples.size());
  if (J < 3) fail("extrapolate_mass: need at least 3 radii");
  for (int j = 1; j < J; ++j)
    if (samples[j].first <= samples[j - 1].first) fail("extrapolate_mass: radii not increasing");

  Extrapolation out;
  double mean = 0.0, scale = 0.0;
  for (auto& s : samples) {
    mean += s.second / J;
    scale = std::max(scale, std::abs(s.second));
  }
  double spread = 0.0;
  for (auto& s : samples) spread = std::max(spread, std::abs(s.second - mean));
  if (spread <= 1e-13 * std::max(1.0, scale)) {
    out.mass_inf = mean;
    out.coefficient = 0.0;
    out.exponent = q_init > 0 ? q_init : 1.0;
    out.exponent_constrained = false;
    out.max_residual = spread;
    out.error_estimate = spread;
    return out;
  }

  // linear least squares in (m_inf, c) at fixed q; 1-d search over q
  auto fit_at = [&](double q, double& m_inf, double& c) {
    double s11 = J, s12 = 0, s22 = 0, sy = 0, sxy = 0;
    for (auto& s : samples) {
      const double x = std::pow(s.first, -q);
      s12 += x;
      s22 += x * x;
      sy += s.second;
      sxy += x * s.second;
    }
    const double det = s11 * s22 - s12 * s12;
    m_inf = (s22 * sy - s12 * sxy) / det;
    c = (s11 * sxy - s12 * sy) / det;
    double rss = 0.0;
    for (auto& s : samples) {
      const double r = s.second - m_inf - c * std::pow(s.first, -q);
      rss += r * r;
    }
    return rss;
  };

  const double qlo = 0.05, qhi = 40.0;
  double best_q = std::min(std::max(q_init > 0 ? q_init : 2.0, qlo), qhi);
  double mi, cc;
  double best = fit_at(best_q, mi, cc);
  // coarse geometric scan then golden-section refinement
  for (int k = 0; k <= 80; ++k) {
    const double q = qlo * std::pow(qhi / qlo, k / 80.0);
    const double rss = fit_at(q, mi, cc);
    if (rss < best) {
      best = rss;
      best_q = q;
    }
  }
  double a = best_q / 1.2, bq = best_q * 1.2;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = bq - gr * (bq - a), x2 = a + gr * (bq - a);
  double f1 = fit_at(x1, mi, cc), f2 = fit_at(x2, mi, cc);
  for (int it = 0; it < 200 && (bq - a) > 1e-12 * best_q; ++it) {
    if (f1 < f2) {
      bq = x2; x2 = x1; f2 = f1;
      x1 = bq - gr * (bq - a);
      f1 = fit_at(x1, mi, cc);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (bq - a);
      f2 = fit_at(x2, mi, cc);
    }
  }
  best_q = 0.5 * (a + bq);
  fit_at(best_q, out.mass_inf, out.coefficient);
  out.exponent = best_q;

  double maxres = 0.0;
  std::vector<double> dev(J);
  for (int j = 0; j < J; ++j) {
    const double fitv = out.mass_inf + out.coefficient * std::pow(samples[j].first, -best_q);
    maxres = std::max(maxres, std::abs(samples[j].second - fitv));
    dev[j] = std::abs(samples[j].second - out.mass_inf);
  }
  out.max_residual = maxres;
  // remaining tail projected past the outermost radius (geometric radii)
  const double tail = std::abs(out.coefficient) * std::pow(samples.back().first, -best_q);
  const double ratio = std::pow(2.0, -best_q);
  out.error_estimate = std::max(maxres, tail * ratio / std::max(1e-12, 1.0 - ratio));
  // the approach to the limit must not grow; a 20% slack plus a round-off
  // floor tolerates quadrature noise near convergence
  out.converged = true;
  for (int j = 1; j < J; ++j)
    if (dev[j] > 1.2 * dev[j - 1] + 1e-12 * std::max(1.0, scale)) out.converged = false;
  return out;
}

MassReport mass_vector(const MetricField& m, int resolution, const std::vector<double>& radii,
                       const EngineConfig& cfg) {
  if (radii.size() < 3) fail("mass_vector: need at least 3 radii");
  const int n = m.dim;
  MassReport rep;
  rep.metric = m.name;
  rep.dimension = n;
  rep.radii = radii;
  rep.flux.assign(n, {});
  rep.equator.assign(n, {});
  rep.mass.assign(n, {});
  rep.decay = validate_decay(m);

  for (double r : radii) {
    const QuadratureRule rule = build_quadrature(n, r, resolution);
    const std::vector<RadiusMass> at = mass_all_at_radius(m, rule, cfg);
    for (int a = 0; a < n; ++a) {
      rep.flux[a].push_back(at[a].flux);
      rep.equator[a].push_back(at[a].equator);
      rep.mass[a].push_back(at[a].mass());
    }
  }

  const double q_init = std::isfinite(m.tau) ? 2 * m.tau - n : 2.0;
  rep.vec.components.resize(n);
  rep.vec.error_estimates.resize(n);
  rep.vec.exponents.resize(n);
  rep.vec.converged.assign(n, true);
  double noise = 0.0;
  for (int a = 0; a < n; ++a) {
    std::vector<std::pair<double, double>> samples;
    for (size_t j = 0; j < radii.size(); ++j) samples.push_back({radii[j], rep.mass[a][j]});
    const Extrapolation ex = extrapolate_mass(samples, q_init);
    rep.vec.components[a] = ex.mass_inf;
    rep.vec.error_estimates[a] = ex.error_estimate;
    rep.vec.exponents[a] = ex.exponent;
    rep.vec.converged[a] = ex.converged;
    noise += ex.error_estimate;
  }
  rep.vec.causal = classify(rep.vec.components, noise);
  rep.vec.lorentz_norm = lorentz_product(rep.vec.components, rep.vec.components);
  return rep;
}

double ricci_mass_at_radius(const MetricField& m, int a, const QuadratureRule& rule,
                            const EngineConfig& cfg) {
  check_rule(m, rule);
  const int n = m.dim;
  if (a < 0 || a >= n) fail("ricci_mass_at_radius: basis index out of range");
  const double lambda = 0.5 * (n - 1) * (n - 2);

  const int nh = static_cast<int>(rule.hemisphere.size());
  std::vector<double> hemi(nh, 0.0);
  parallel_for(nh, cfg.workers, [&](int i) {
    const QuadNode& nd = rule.hemisphere[i];
    const Eigen::MatrixXd g = m.components(nd.p);
    const Curvature curv = curvature(m, nd.p, cfg.fd);
    const Eigen::MatrixXd ghat = curv.ricci - 0.5 * curv.scalar * g - lambda * g;
    const Eigen::MatrixXd ginv = g.inverse();
    // outward unit g-normal of the coordinate sphere
    Eigen::VectorXd dr = Eigen::VectorXd::Zero(n);
    dr[0] = 1.0;
    Eigen::VectorXd mu_g = ginv * dr;
    mu_g /= std::sqrt(mu_g.dot(g * mu_g));
    const Eigen::VectorXd X = conformal_field(a, nd.p);
    // g-area element over the angle coordinates
    Eigen::MatrixXd gram(n - 1, n - 1);
    for (int c = 1; c < n; ++c)
      for (int d = 1; d < n; ++d) gram(c - 1, d - 1) = g(c, d);
    hemi[i] = X.dot(ghat * mu_g) * std::sqrt(gram.determinant()) * nd.raw_weight;
  });

  const int ne = static_cast<int>(rule.equator.size());
  std::vector<double> eq(ne, 0.0);
  parallel_for(ne, cfg.workers, [&](int i) {
    const QuadNode& nd = rule.equator[i];
    const BoundaryGeometry bg = boundary_geometry(m, nd.p, cfg.fd);
    const int nt = n - 1;
    const Eigen::MatrixXd J = bg.second_form - bg.mean_curvature * bg.induced;
    // face-tangent components of X_a and of the outward radial conormal
    const Eigen::VectorXd X = conformal_field(a, nd.p);
    Eigen::VectorXd Xt(nt);
    for (int c = 0; c < nt; ++c) Xt[c] = X[bg.tangent_coords[c]];
    // vartheta_g: radial direction g-orthogonalized (within the face)
    // against an orthonormalized equator tangent basis, then g-normalized.
    // Face coordinate order: r first, then the equator angles.
    std::vector<Eigen::VectorXd> eq_basis;
    for (int c = 1; c < nt; ++c) {
      Eigen::VectorXd ec = Eigen::VectorXd::Zero(nt);
      ec[c] = 1.0;
      for (const auto& u : eq_basis) ec -= u.dot(bg.induced * ec) * u;
      ec /= std::sqrt(ec.dot(bg.induced * ec));
      eq_basis.push_back(ec);
    }
    Eigen::VectorXd vt = Eigen::VectorXd::Zero(nt);
    vt[0] = 1.0;
    for (const auto& u : eq_basis) vt -= u.dot(bg.induced * vt) * u;
    vt /= std::sqrt(vt.dot(bg.induced * vt));
    // g-area of the equator over its angle coordinates
    Eigen::MatrixXd gram(n - 2, n - 2);
    const Eigen::MatrixXd g = m.components(nd.p);
    for (int c = 2; c < n; ++c)
      for (int d = 2; d < n; ++d) gram(c - 2, d - 2) = g(c, d);
    eq[i] = Xt.dot(J * vt) * std::sqrt(gram.determinant()) * nd.raw_weight;
  });

  return pairwise_sum(hemi) + pairwise_sum(eq);
}

double max_modified_einstein_norm(const MetricField& m, const QuadratureRule& rule,
                                  const EngineConfig& cfg) {
  const int n = m.dim;
  const double lambda = 0.5 * (n - 1) * (n - 2);
  const int nh = static_cast<int>(rule.hemisphere.size());
  std::vector<double> norms(nh, 0.0);
  parallel_for(nh, cfg.workers, [&](int i) {
    const QuadNode& nd = rule.hemisphere[i];
    const Eigen::MatrixXd g = m.components(nd.p);
    const Curvature curv = curvature(m, nd.p, cfg.fd);
    const Eigen::MatrixXd ghat = curv.ricci - 0.5 * curv.scalar * g - lambda * g;
    // frame norm: |Ghat|_g via g-inverse contractions
    const Eigen::MatrixXd ginv = g.inverse();
    norms[i] = std::sqrt(std::max(0.0, (ginv * ghat * ginv * ghat).trace()));
  });
  double worst = 0.0;
  for (double v : norms) worst = std::max(worst, v);
  return worst;
}

DnCalibration calibrate_dn(const std::vector<MetricField>& zoo, int resolution,
                           const std::vector<double>& radii, const EngineConfig& cfg) {
  if (zoo.size() < 2) fail("calibrate_dn: need at least 2 metrics");
  DnCalibration out;
  double num = 0.0, den = 0.0;
  std::ostringstream detail;
  for (const MetricField& m : zoo) {
    for (double r : radii) {
      const QuadratureRule rule = build_quadrature(m.dim, r, resolution);
      const std::vector<RadiusMass> charge = mass_all_at_radius(m, rule, cfg);
      const double c0 = charge[0].mass();
      const double ric = ricci_mass_at_radius(m, 0, rule, cfg);
      if (std::abs(c0) < 1e-10) continue;
      num += c0 * ric;
      den += ric * ric;
      if (std::abs(ric) > 1e-10 * std::max(1.0, std::abs(c0))) {
        out.ratios.push_back(c0 / ric);
      } else {
        out.ratios.push_back(std::numeric_limits<double>::infinity());
      }
      detail << m.name << " r=" << r << " charge=" << c0 << " ricci=" << ric << "; ";
    }
  }
  if (out.ratios.empty()) {
    out.detail = "no usable (metric, radius) entries: all charge masses below threshold";
    return out;
  }
  out.d_n = den > 0 ? num / den : 0.0;
  double lo = out.ratios[0], hi = out.ratios[0];
  bool finite = std::isfinite(lo);
  for (double v : out.ratios) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    finite = finite && std::isfinite(v);
  }
  const double mid = 0.5 * (lo + hi);
  out.max_ratio_spread = finite && mid != 0 ? std::abs(hi - lo) / std::abs(mid)
                                            : std::numeric_limits<double>::infinity();
  // consistency is about the magnitude; a negative empirical ratio is
  // reported as a sign flip rather than asserted away
  out.consistent = finite && ((lo < 0) == (hi < 0)) && out.max_ratio_spread <= 0.02;
  out.sign_flip = finite && out.d_n < 0;
  out.detail = detail.str();
  if (!out.consistent)
    out.detail += " calibration failure: ratios inconsistent or degenerate";
  else if (out.sign_flip)
    out.detail += " ratio consistent with negative sign (sign flip flagged)";
  return out;
}

MetricField rechart_by_isometry(const MetricField& m, const IsometryElement& iso) {
  iso.validate();
  MetricField out = m;
  out.name = m.name + "+isometry";
  out.d1 = nullptr;
  out.d2 = nullptr;
  auto comp = m.components;
  const IsometryElement iso_copy = iso;
  out.components = [comp, iso_copy](const ChartPoint& p) {
    const ChartPoint q = iso_copy.apply(p);
    const Eigen::MatrixXd J = iso_copy.chart_jacobian(p);
    return Eigen::MatrixXd(J.transpose() * comp(q) * J);
  };
  // the image radius can shrink by at most the operator norm of the Lorentz
  // matrix (rotations preserve it; a boost of rapidity s scales by e^s)
  const double gain = iso.matrix.operatorNorm();
  out.radial_extent = m.radial_extent * gain * 1.01;
  return out;
}

}  // namespace hypmass
