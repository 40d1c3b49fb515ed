#pragma once

#include <vector>

#include "mplab/linalg.hpp"

namespace mplab {

// Gauss-Legendre nodes and weights on [-1, 1]
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

// Shell r_inner <= |z| <= r_outer in C^d, z_j = rho sqrt(t_j) e^{i theta_j}:
// Gauss-Legendre in rho, collapsed Gauss-Legendre on the simplex of t, uniform theta.
struct QuadratureScheme {
  int radial = 32;
  int angular = 64;
  int simplex = 0;  // 0: same as radial
  double r_inner = 1.0;
  double r_outer = 2.0;

  struct Node {
    rvec y;  // (x'_1..x'_d, p'_1..p'_d) with z'_j = p'_j + i x'_j
    double weight;
  };
  // d = 0 gives the single point of C^0 with weight 1
  std::vector<Node> nodes(int d) const;
  QuadratureScheme doubled() const;
};

// radial 32 / angular 64 for one complex dimension, coarser above
QuadratureScheme default_quadrature(int n);

}  // namespace mplab
