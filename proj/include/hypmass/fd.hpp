// Finite-difference stencils for chart-coordinate derivatives.
//
// First derivatives: central differences, step h1 = scale1 * (1 + |coord|).
// Second derivatives: 5-point stencil on the diagonal, 4-point cross stencil
// for mixed partials, step h2 = scale2 * (1 + |coord|).
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "hypmass/chart.hpp"
#include "hypmass/types.hpp"

namespace hypmass {

struct FdConfig {
  double step1 = 1e-5;  // relative first-derivative step
  double step2 = 1e-4;  // relative second-derivative step
};

using ScalarField = std::function<double(const ChartPoint&)>;
using VectorField = std::function<Eigen::VectorXd(const ChartPoint&)>;
using MatrixField = std::function<Eigen::MatrixXd(const ChartPoint&)>;

ChartPoint shifted(const ChartPoint& p, int coord, double delta);

double fd_step1(const ChartPoint& p, int coord, const FdConfig& cfg = {});
double fd_step2(const ChartPoint& p, int coord, const FdConfig& cfg = {});

// d f / d x^c
double fd_d1(const ScalarField& f, const ChartPoint& p, int coord, const FdConfig& cfg = {});
Eigen::VectorXd fd_grad(const ScalarField& f, const ChartPoint& p, const FdConfig& cfg = {});

// d F_{ij} / d x^c, returned as Tensor3 (c, i, j).
Tensor3 fd_matrix_d1(const MatrixField& f, const ChartPoint& p, const FdConfig& cfg = {});

// d^2 F_{ij} / d x^c d x^d, returned as Tensor4 (c, d, i, j).
Tensor4 fd_matrix_d2(const MatrixField& f, const ChartPoint& p, const FdConfig& cfg = {});

// d V_i / d x^c as a matrix (c, i).
Eigen::MatrixXd fd_vector_d1(const VectorField& f, const ChartPoint& p, const FdConfig& cfg = {});

// d^2 V_i / d x^c d x^d as Tensor3 (c, d, i).
Tensor3 fd_vector_d2(const VectorField& f, const ChartPoint& p, const FdConfig& cfg = {});

}  // namespace hypmass
