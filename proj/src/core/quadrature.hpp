#pragma once

#include <array>
#include <vector>

#include "core/types.hpp"

namespace ppeflow {

/// Quadrature rule on the reference triangle {(x,y): x,y >= 0, x+y <= 1}.
/// Points are stored as barycentric triples (l0, l1, l2) with
/// l0 = 1-x-y, l1 = x, l2 = y. Weights are positive and sum to the
/// reference area 1/2.
struct TriangleQuadrature {
  int degree = 0;  // exact for total degree <= degree
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// 1D Gauss-Legendre rule on [0,1]; weights sum to 1.
struct EdgeQuadrature {
  int degree = 0;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Symmetric positive-weight rule exact for bivariate polynomials of total
/// degree <= degree. Supported range: 1 <= degree <= 12.
TriangleQuadrature triangle_quadrature(int degree);

/// Gauss-Legendre on [0,1], exact for 1D polynomials of degree <= degree.
EdgeQuadrature edge_quadrature(int degree);

}  // namespace ppeflow
