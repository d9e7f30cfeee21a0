// Quadrature rules on the coordinate hemispheres S^{n-1}_{r,+} and their
// equators S^{n-2}_r: tensor-product Gauss-Legendre in the polar angle
// against the boundary (theta_2 in [0, pi/2]) and in the remaining
// colatitudes, trapezoid in the periodic azimuth. Weights carry the
// b-induced area elements; raw coordinate-measure weights are kept alongside
// for rules that need a different area density.
#pragma once

#include <vector>

#include "hypmass/chart.hpp"

namespace hypmass {

struct QuadNode {
  ChartPoint p;
  double raw_weight = 0.0;  // product d(theta) measure only
  double b_weight = 0.0;    // includes the b-area element
};

struct QuadratureRule {
  int dim = 0;
  double radius = 0.0;
  int resolution = 0;
  std::vector<QuadNode> hemisphere;
  std::vector<QuadNode> equator;

  double hemisphere_area() const;  // sum of hemisphere b-weights
  double equator_area() const;     // sum of equator b-weights
};

QuadratureRule build_quadrature(int n, double radius, int resolution);

// Closed-form b-areas for validation.
double hemisphere_area_closed_form(int n, double radius);
double equator_area_closed_form(int n, double radius);

// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace hypmass
