#pragma once

#include <Eigen/Dense>

namespace rmm {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using VectorXd = Eigen::VectorXd;
using MatrixXd = Eigen::MatrixXd;

/// Threading mode for the data-parallel kernels. Every OpenMP kernel has a
/// serial twin producing bit-identical results; Serial selects the twin.
enum class Threading { Serial, OpenMP };

inline Mat3 sym_part(const Mat3& a) { return 0.5 * (a + a.transpose()); }
inline Mat3 skew_part(const Mat3& a) { return 0.5 * (a - a.transpose()); }

}  // namespace rmm
