#include "hypmass/fd.hpp"

#include <cmath>

namespace hypmass {

ChartPoint shifted(const ChartPoint& p, int coord, double delta) {
  ChartPoint q = p;
  q.x[coord] += delta;
  return q;
}

double fd_step1(const ChartPoint& p, int coord, const FdConfig& cfg) {
  return cfg.step1 * (1.0 + std::abs(p.x[coord]));
}

double fd_step2(const ChartPoint& p, int coord, const FdConfig& cfg) {
  return cfg.step2 * (1.0 + std::abs(p.x[coord]));
}

double fd_d1(const ScalarField& f, const ChartPoint& p, int coord, const FdConfig& cfg) {
  const double h = fd_step1(p, coord, cfg);
  return (f(shifted(p, coord, h)) - f(shifted(p, coord, -h))) / (2 * h);
}

Eigen::VectorXd fd_grad(const ScalarField& f, const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  Eigen::VectorXd g(n);
  for (int c = 0; c < n; ++c) g[c] = fd_d1(f, p, c, cfg);
  return g;
}

Tensor3 fd_matrix_d1(const MatrixField& f, const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  Tensor3 out(n);
  for (int c = 0; c < n; ++c) {
    const double h = fd_step1(p, c, cfg);
    Eigen::MatrixXd d = (f(shifted(p, c, h)) - f(shifted(p, c, -h))) / (2 * h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(c, i, j) = d(i, j);
  }
  return out;
}

Tensor4 fd_matrix_d2(const MatrixField& f, const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  Tensor4 out(n);
  const Eigen::MatrixXd f0 = f(p);
  for (int c = 0; c < n; ++c) {
    const double hc = fd_step2(p, c, cfg);
    // diagonal: 5-point stencil
    Eigen::MatrixXd dcc = (-f(shifted(p, c, 2 * hc)) + 16.0 * f(shifted(p, c, hc)) -
                           30.0 * f0 + 16.0 * f(shifted(p, c, -hc)) -
                           f(shifted(p, c, -2 * hc))) /
                          (12.0 * hc * hc);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(c, c, i, j) = dcc(i, j);
    // mixed: 4-point cross stencil
    for (int d = c + 1; d < n; ++d) {
      const double hd = fd_step2(p, d, cfg);
      Eigen::MatrixXd m =
          (f(shifted(shifted(p, c, hc), d, hd)) - f(shifted(shifted(p, c, hc), d, -hd)) -
           f(shifted(shifted(p, c, -hc), d, hd)) + f(shifted(shifted(p, c, -hc), d, -hd))) /
          (4.0 * hc * hd);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          out(c, d, i, j) = m(i, j);
          out(d, c, i, j) = m(i, j);
        }
    }
  }
  return out;
}

Eigen::MatrixXd fd_vector_d1(const VectorField& f, const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  Eigen::MatrixXd out(n, n);
  for (int c = 0; c < n; ++c) {
    const double h = fd_step1(p, c, cfg);
    out.row(c) = ((f(shifted(p, c, h)) - f(shifted(p, c, -h))) / (2 * h)).transpose();
  }
  return out;
}

Tensor3 fd_vector_d2(const VectorField& f, const ChartPoint& p, const FdConfig& cfg) {
  const int n = p.dim();
  Tensor3 out(n);
  const Eigen::VectorXd f0 = f(p);
  for (int c = 0; c < n; ++c) {
    const double hc = fd_step2(p, c, cfg);
    Eigen::VectorXd dcc = (-f(shifted(p, c, 2 * hc)) + 16.0 * f(shifted(p, c, hc)) -
                           30.0 * f0 + 16.0 * f(shifted(p, c, -hc)) -
                           f(shifted(p, c, -2 * hc))) /
                          (12.0 * hc * hc);
    for (int i = 0; i < n; ++i) out(c, c, i) = dcc[i];
    for (int d = c + 1; d < n; ++d) {
      const double hd = fd_step2(p, d, cfg);
      Eigen::VectorXd m =
          (f(shifted(shifted(p, c, hc), d, hd)) - f(shifted(shifted(p, c, hc), d, -hd)) -
           f(shifted(shifted(p, c, -hc), d, hd)) + f(shifted(shifted(p, c, -hc), d, -hd))) /
          (4.0 * hc * hd);
      for (int i = 0; i < n; ++i) {
        out(c, d, i) = m[i];
        out(d, c, i) = m[i];
      }
    }
  }
  return out;
}

}  // namespace hypmass
