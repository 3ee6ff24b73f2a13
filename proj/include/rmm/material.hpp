#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rmm/types.hpp"

namespace rmm {

/// Orthonormal Mandel encoding of symmetric 3x3 tensors:
/// (s11, s22, s33, sqrt2*s23, sqrt2*s13, sqrt2*s12). Frobenius norm equals
/// the Euclidean norm of the 6-vector, so positivity constants of 6x6
/// representations are exact eigenvalues.
Vec6 mandel(const Mat3& sym);
Mat3 mandel_to_mat(const Vec6& v);

/// Row-major 9-vector encoding of a full 3x3 tensor.
Vec9 rowvec(const Mat3& m);
Mat3 rowvec_to_mat(const Vec9& v);

/// Isotropic stiffness sigma -> 2 mu sigma + lambda tr(sigma) I in Mandel
/// form. Eigenvalues are 2 mu (x5) and 3 lambda + 2 mu; both must be
/// positive.
Mat6 isotropic_stiffness(double lambda, double mu);

enum class LcVariant { ScalarIsotropic, BlockDiagonal, Full };

/// Cell-wise affine multiplier 1-parameter family a + <b, x>; must stay
/// positive on the closed unit cube (checked at the corners, exact for an
/// affine function).
struct SpatialScaling {
  double a = 1.0;
  Vec3 b = Vec3::Zero();
  bool varying() const { return b.squaredNorm() > 0.0; }
  double operator()(const Vec3& x) const { return a + b.dot(x); }
  double min_on_cube() const;
};

/// Coefficient tensors of the coupled model: C_e and C_micro act on Sym(3)
/// (Mandel 6x6), L_c acts on full 3x3 tensors (row-major 9x9), and the
/// gauge model's skew coupling is the isotropic form 2 mu_c * skew.
struct MaterialModel {
  Mat6 Ce = Mat6::Identity();
  Mat6 Cmicro = Mat6::Identity();
  Mat9 Lc = Mat9::Identity();
  LcVariant lc_variant = LcVariant::ScalarIsotropic;
  double mu_c = 0.0;

  SpatialScaling scale_e, scale_micro, scale_lc;

  bool spatially_varying() const {
    return scale_e.varying() || scale_micro.varying() || scale_lc.varying();
  }

  static MaterialModel isotropic(double lambda_e, double mu_e,
                                 double lambda_micro, double mu_micro,
                                 double lc_squared, double mu_c = 0.0);
  static Mat9 lc_scalar(double lc_squared);
  static Mat9 lc_block_diagonal(const std::array<Mat3, 3>& blocks);
};

/// Symmetry and positivity report for the coefficient tensors: exact minimum
/// eigenvalues of the small Mandel/row-vector matrices plus max symmetry
/// defects. ok is false if any minimum eigenvalue is <= 0, mu_c < 0, or a
/// spatial multiplier loses positivity on the cube.
struct AssumptionAReport {
  double min_eig_e = 0.0;
  double min_eig_micro = 0.0;
  double min_eig_lc = 0.0;
  double sym_defect_e = 0.0;
  double sym_defect_micro = 0.0;
  double sym_defect_lc = 0.0;
  double mu_c = 0.0;
  bool ok = false;
  std::string violation;
};
AssumptionAReport check_assumption_A(const MaterialModel& m);

/// The 12x12 Mandel matrix ((Ce, -Ce), (-Ce, Ce + Cmicro)) acting on pairs
/// of symmetric tensors.
Mat12 block_A(const MaterialModel& m);

/// Exact minimum eigenvalue of block_A.
double block_A_min_eigenvalue(const MaterialModel& m);

/// Monte-Carlo check of <A s, s> >= 2/9 min{C_e, C_micro} |s|^2 over random
/// unit pairs; returns the worst (most negative) margin seen.
double verify_A_bound(const MaterialModel& m, int samples,
                      std::uint64_t seed = 0x5eedULL);

}  // namespace rmm
