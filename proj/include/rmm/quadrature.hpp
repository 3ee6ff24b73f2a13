#pragma once

#include <vector>

#include "rmm/types.hpp"

namespace rmm {

/// Quadrature rule on the reference tetrahedron. Points are barycentric
/// (lambda0..lambda3); weights are positive and sum to the reference volume
/// 1/6, so a physical integral is sum_q w_q f(x_q) * |det(map)|.
struct Quadrature {
  int degree = 0;
  std::vector<Vec4> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Rules exact for total polynomial degree `degree` on the reference tet.
/// Supported degrees: 1 (centroid), 2 (4-point), 4 and 6 (collapsed
/// tensor-Gauss rules; these over-deliver, being exact to degree 5 and 7).
Quadrature quadrature(int degree);

}  // namespace rmm
