#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include "rmm/types.hpp"

namespace rmm {

/// One-dimensional closed-form factor with exact derivatives: sin(k pi x),
/// cos(k pi x), or a polynomial of degree <= 4.
class Factor1D {
 public:
  static Factor1D sin_pi(double k);
  static Factor1D cos_pi(double k);
  static Factor1D poly(std::initializer_list<double> coeffs);
  static Factor1D one();

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;

 private:
  enum class Kind { Sin, Cos, Poly };
  Kind kind_ = Kind::Poly;
  double k_ = 0.0;
  std::array<double, 5> c_{};
};

/// Sum of separable terms c * f0(x) f1(y) f2(z) with exact first and second
/// partial derivatives.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(double c, Factor1D fx, Factor1D fy, Factor1D fz);
  static ScalarField constant(double c);

  void add_term(double c, Factor1D fx, Factor1D fy, Factor1D fz);

  double value(const Vec3& x) const;
  Vec3 grad(const Vec3& x) const;
  Mat3 hess(const Vec3& x) const;

  ScalarField scaled(double s) const;

 private:
  struct Term {
    double c;
    std::array<Factor1D, 3> f;
  };
  std::vector<Term> terms_;
};

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::array<ScalarField, 3> comps) : comp_(std::move(comps)) {}

  /// s(x) * direction
  static VectorField scaled_direction(const ScalarField& s, const Vec3& dir);
  static VectorField zero();
  static VectorField linear(const Mat3& a);  // x -> A x

  Vec3 value(const Vec3& x) const;
  Mat3 jacobian(const Vec3& x) const;  // (i,j) = d_j comp_i
  Mat3 hess(int comp, const Vec3& x) const;

  const ScalarField& component(int i) const { return comp_[i]; }

 private:
  std::array<ScalarField, 3> comp_;
};

class TensorField {
 public:
  TensorField() = default;

  /// s(x) * K for a constant tensor K.
  static TensorField scaled_constant(const ScalarField& s, const Mat3& k);
  static TensorField zero();
  static TensorField constant(const Mat3& k);

  ScalarField& entry(int i, int j) { return e_[i][j]; }
  const ScalarField& entry(int i, int j) const { return e_[i][j]; }

  Mat3 value(const Vec3& x) const;
  Mat3 d(const Vec3& x, int j) const;          // entrywise d_j
  Mat3 d2(const Vec3& x, int j, int k) const;  // entrywise d_j d_k

  /// Row-wise curl from exact first derivatives.
  Mat3 curl(const Vec3& x) const;
  /// d_j of the row-wise curl, from exact second derivatives.
  Mat3 curl_d(const Vec3& x, int j) const;

 private:
  std::array<std::array<ScalarField, 3>, 3> e_;
};

/// Default manufactured fields: s = sin(pi x) sin(pi y) sin(pi z) and the
/// polynomial bubble g = x(1-x) y(1-y) z(1-z); both vanish on the cube
/// boundary, so u = s*dir satisfies u = 0 and P = s*K has zero tangential
/// trace.
ScalarField trig_bubble();
ScalarField poly_bubble();

}  // namespace rmm
