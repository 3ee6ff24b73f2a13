#include "rmm/material.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rmm {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

Vec6 mandel(const Mat3& s) {
  Vec6 v;
  v << s(0, 0), s(1, 1), s(2, 2), kSqrt2 * s(1, 2), kSqrt2 * s(0, 2),
      kSqrt2 * s(0, 1);
  return v;
}

Mat3 mandel_to_mat(const Vec6& v) {
  Mat3 s;
  s << v[0], v[5] / kSqrt2, v[4] / kSqrt2,  //
      v[5] / kSqrt2, v[1], v[3] / kSqrt2,   //
      v[4] / kSqrt2, v[3] / kSqrt2, v[2];
  return s;
}

Vec9 rowvec(const Mat3& m) {
  Vec9 v;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) v[3 * r + c] = m(r, c);
  return v;
}

Mat3 rowvec_to_mat(const Vec9& v) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = v[3 * r + c];
  return m;
}

Mat6 isotropic_stiffness(double lambda, double mu) {
  if (mu <= 0.0 || 3.0 * lambda + 2.0 * mu <= 0.0)
    throw std::invalid_argument(
        "isotropic_stiffness: requires mu > 0 and 3*lambda + 2*mu > 0");
  Mat6 c = 2.0 * mu * Mat6::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) += lambda;
  return c;
}

double SpatialScaling::min_on_cube() const {
  double m = std::numeric_limits<double>::max();
  for (int corner = 0; corner < 8; ++corner)
    m = std::min(m, (*this)(Vec3(corner & 1, (corner >> 1) & 1, (corner >> 2) & 1)));
  return m;
}

MaterialModel MaterialModel::isotropic(double lambda_e, double mu_e,
                                       double lambda_micro, double mu_micro,
                                       double lc_squared, double mu_c) {
  MaterialModel m;
  m.Ce = isotropic_stiffness(lambda_e, mu_e);
  m.Cmicro = isotropic_stiffness(lambda_micro, mu_micro);
  m.Lc = lc_scalar(lc_squared);
  m.lc_variant = LcVariant::ScalarIsotropic;
  m.mu_c = mu_c;
  return m;
}

Mat9 MaterialModel::lc_scalar(double lc_squared) {
  if (lc_squared <= 0.0)
    throw std::invalid_argument("lc_scalar: L_c^2 must be positive");
  return lc_squared * Mat9::Identity();
}

Mat9 MaterialModel::lc_block_diagonal(const std::array<Mat3, 3>& blocks) {
  Mat9 lc = Mat9::Zero();
  for (int r = 0; r < 3; ++r) lc.block<3, 3>(3 * r, 3 * r) = blocks[r];
  return lc;
}

AssumptionAReport check_assumption_A(const MaterialModel& m) {
  AssumptionAReport rep;
  rep.sym_defect_e = (m.Ce - m.Ce.transpose()).cwiseAbs().maxCoeff();
  rep.sym_defect_micro = (m.Cmicro - m.Cmicro.transpose()).cwiseAbs().maxCoeff();
  rep.sym_defect_lc = (m.Lc - m.Lc.transpose()).cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<Mat6> ee(0.5 * (m.Ce + m.Ce.transpose()));
  Eigen::SelfAdjointEigenSolver<Mat6> em(0.5 * (m.Cmicro + m.Cmicro.transpose()));
  Eigen::SelfAdjointEigenSolver<Mat9> el(0.5 * (m.Lc + m.Lc.transpose()));
  rep.min_eig_e = ee.eigenvalues().minCoeff() * m.scale_e.min_on_cube();
  rep.min_eig_micro = em.eigenvalues().minCoeff() * m.scale_micro.min_on_cube();
  rep.min_eig_lc = el.eigenvalues().minCoeff() * m.scale_lc.min_on_cube();
  rep.mu_c = m.mu_c;

  rep.ok = true;
  const double sym_tol = 1e-12;
  if (rep.sym_defect_e > sym_tol || rep.sym_defect_micro > sym_tol ||
      rep.sym_defect_lc > sym_tol) {
    rep.ok = false;
    rep.violation = "coefficient tensor not symmetric";
  } else if (rep.min_eig_e <= 0.0) {
    rep.ok = false;
    rep.violation = "C_e not positive definite";
  } else if (rep.min_eig_micro <= 0.0) {
    rep.ok = false;
    rep.violation = "C_micro not positive definite";
  } else if (rep.min_eig_lc <= 0.0) {
    rep.ok = false;
    rep.violation = "L_c not positive definite";
  } else if (m.mu_c < 0.0) {
    rep.ok = false;
    rep.violation = "mu_c must be >= 0";
  }
  return rep;
}

Mat12 block_A(const MaterialModel& m) {
  Mat12 a;
  a.block<6, 6>(0, 0) = m.Ce;
  a.block<6, 6>(0, 6) = -m.Ce;
  a.block<6, 6>(6, 0) = -m.Ce;
  a.block<6, 6>(6, 6) = m.Ce + m.Cmicro;
  return a;
}

double block_A_min_eigenvalue(const MaterialModel& m) {
  Eigen::SelfAdjointEigenSolver<Mat12> es(block_A(m));
  return es.eigenvalues().minCoeff();
}

double verify_A_bound(const MaterialModel& m, int samples, std::uint64_t seed) {
  const Mat12 a = block_A(m);
  Eigen::SelfAdjointEigenSolver<Mat6> ee(m.Ce);
  Eigen::SelfAdjointEigenSolver<Mat6> em(m.Cmicro);
  const double bound =
      (2.0 / 9.0) * std::min(ee.eigenvalues().minCoeff(),
                             em.eigenvalues().minCoeff());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = std::numeric_limits<double>::max();
  Eigen::Matrix<double, 12, 1> s;
  for (int it = 0; it < samples; ++it) {
    for (int i = 0; i < 12; ++i) s[i] = gauss(rng);
    s.normalize();
    worst = std::min(worst, s.dot(a * s) - bound);
  }
  return worst;
}

}  // namespace rmm
