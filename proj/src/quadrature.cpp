#include "rmm/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rmm {

namespace {

struct Gauss1d {
  std::vector<double> x;  // nodes on [0,1]
  std::vector<double> w;  // weights summing to 1
};

// Gauss-Legendre rules mapped from [-1,1] to [0,1]; closed-form nodes.
Gauss1d gauss_legendre_01(int m) {
  Gauss1d g;
  auto push = [&g](double t, double w) {
    g.x.push_back(0.5 * (t + 1.0));
    g.w.push_back(0.5 * w);
  };
  switch (m) {
    case 4: {
      const double t1 = std::sqrt((3.0 - 2.0 * std::sqrt(6.0 / 5.0)) / 7.0);
      const double t2 = std::sqrt((3.0 + 2.0 * std::sqrt(6.0 / 5.0)) / 7.0);
      const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
      const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
      push(-t2, w2);
      push(-t1, w1);
      push(t1, w1);
      push(t2, w2);
      break;
    }
    case 5: {
      const double t1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double t2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      push(-t2, w2);
      push(-t1, w1);
      push(0.0, 128.0 / 225.0);
      push(t1, w1);
      push(t2, w2);
      break;
    }
    default:
      throw std::invalid_argument("gauss_legendre_01: unsupported order");
  }
  return g;
}

// Collapsed-coordinate (Duffy) rule: x=u, y=v(1-u), z=w(1-u)(1-v) with
// Jacobian (1-u)^2 (1-v) folded into the weights. An m-point Gauss rule per
// axis integrates total degree 2m-3 exactly.
Quadrature duffy_rule(int declared_degree, int m) {
  const Gauss1d g = gauss_legendre_01(m);
  Quadrature q;
  q.degree = declared_degree;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const double u = g.x[a], v = g.x[b], w = g.x[c];
        const double x = u;
        const double y = v * (1.0 - u);
        const double z = w * (1.0 - u) * (1.0 - v);
        q.points.emplace_back(1.0 - x - y - z, x, y, z);
        q.weights.push_back(g.w[a] * g.w[b] * g.w[c] * (1.0 - u) * (1.0 - u) *
                            (1.0 - v));
      }
  return q;
}

}  // namespace

Quadrature quadrature(int degree) {
  Quadrature q;
  q.degree = degree;
  switch (degree) {
    case 1:
      q.points.emplace_back(0.25, 0.25, 0.25, 0.25);
      q.weights.push_back(1.0 / 6.0);
      return q;
    case 2: {
      const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
      const double b = (5.0 - std::sqrt(5.0)) / 20.0;
      for (int i = 0; i < 4; ++i) {
        Vec4 p(b, b, b, b);
        p[i] = a;
        q.points.push_back(p);
        q.weights.push_back(1.0 / 24.0);
      }
      return q;
    }
    case 4:
      return duffy_rule(4, 4);
    case 6:
      return duffy_rule(6, 5);
    default:
      throw std::invalid_argument("quadrature: supported degrees are 1,2,4,6");
  }
}

}  // namespace rmm
