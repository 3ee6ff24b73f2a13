#pragma once

#include <array>
#include <functional>
#include <vector>

#include "rmm/mesh.hpp"
#include "rmm/types.hpp"

namespace rmm {

enum class SpaceKind { LagrangeVec3, Nedelec0Tensor3 };

struct DofRef {
  int index;
  double sign;  // +-1; always +1 for Lagrange dofs
};

/// Degree-of-freedom map for a 3-component Lagrange space (order 1 or 2) or
/// the row-wise lowest-order Nedelec space for 3x3 tensor fields.
///
/// Layouts (component-major so per-row/per-component blocks are contiguous):
///   LagrangeVec3:     dof(comp, node) = comp * nodes + node, nodes = V (P1)
///                     or V + E (P2, edge node e stored at V + e).
///   Nedelec0Tensor3:  dof(row, edge) = row * E + edge.
///
/// constrained_dofs realize the homogeneous boundary conditions: u = 0 on the
/// boundary for Lagrange, zero tangential trace (row x n = 0) for Nedelec.
class FeSpace {
 public:
  static FeSpace build(const TetMesh& mesh, SpaceKind kind, int order = 1);

  SpaceKind kind() const { return kind_; }
  int order() const { return order_; }
  const TetMesh& mesh() const { return *mesh_; }
  int dof_count() const { return dof_count_; }
  int scalar_count() const { return scalar_count_; }  // nodes or edges
  int fields() const { return 3; }                    // components or rows

  bool constrained(int dof) const { return constrained_[dof] != 0; }
  const std::vector<int>& constrained_dofs() const { return constrained_list_; }
  std::vector<int> unconstrained_dofs() const;

  int dof(int field, int scalar) const { return field * scalar_count_ + scalar; }

  /// Scalar entities of a cell in local order: Lagrange nodes (4 or 10) or
  /// the 6 signed edges.
  int scalars_per_cell() const;
  void cell_scalars(int cell, std::array<DofRef, 10>& out) const;

  /// Full per-cell global DOF list with signs, local index = field *
  /// scalars_per_cell() + local_scalar.
  int dofs_per_cell() const { return 3 * scalars_per_cell(); }
  void cell_dofs(int cell, std::vector<DofRef>& out) const;

  /// Geometric location of a Lagrange node (vertex or edge midpoint).
  Vec3 node_position(int node) const;

 private:
  SpaceKind kind_ = SpaceKind::LagrangeVec3;
  int order_ = 1;
  const TetMesh* mesh_ = nullptr;
  int dof_count_ = 0;
  int scalar_count_ = 0;
  std::vector<std::uint8_t> constrained_;
  std::vector<int> constrained_list_;
};

/// Values and reference gradients of the scalar Lagrange basis at a
/// barycentric point. Partition of unity: values sum to 1, gradients to 0.
struct LagrangeBasis {
  int count = 0;
  std::array<double, 10> value{};
  std::array<Vec3, 10> grad_ref{};
};
LagrangeBasis eval_lagrange_basis(int order, const Vec4& bary);

/// Whitney edge functions w_ab = lambda_a grad(lambda_b) - lambda_b
/// grad(lambda_a) in physical coordinates, local edge order as kTetEdges.
/// Curls are constant per cell: curl w_ab = 2 grad(lambda_a) x grad(lambda_b).
struct NedelecBasis {
  std::array<Vec3, 6> value{};
  std::array<Vec3, 6> curl{};
};
NedelecBasis eval_nedelec_basis(const CellGeometry& geom, const Vec4& bary);

/// Physical gradients of the four barycentric coordinates on a cell.
std::array<Vec3, 4> barycentric_gradients(const CellGeometry& geom);

using VectorFn = std::function<Vec3(const Vec3&)>;
using TensorFn = std::function<Mat3(const Vec3&)>;

/// Nodal interpolation (Lagrange) / per-row tangential edge moments via
/// 2-point Gauss (Nedelec). Fills all DOFs including constrained ones.
VectorXd interpolate(const FeSpace& space, const VectorFn& f);
VectorXd interpolate(const FeSpace& space, const TensorFn& f);

/// Scalar P1 helper used by the Helmholtz machinery and tests.
VectorXd interpolate_p1_scalar(const TetMesh& mesh,
                               const std::function<double(const Vec3&)>& f);

}  // namespace rmm
