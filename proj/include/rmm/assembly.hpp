#pragma once

#include <functional>
#include <vector>

#include "rmm/fem.hpp"
#include "rmm/linalg.hpp"
#include "rmm/material.hpp"
#include "rmm/mesh.hpp"
#include "rmm/quadrature.hpp"

namespace rmm {

/// Element contribution provider. Kernels are pure per-cell functions, so the
/// parallel path (local matrices computed per batch in parallel, scattered
/// serially in cell order) is bit-identical to the serial one for any thread
/// count.
class ElementKernel {
 public:
  virtual ~ElementKernel() = default;
  virtual int local_size() const = 0;
  virtual void cell_dofs(int cell, std::vector<DofRef>& out) const = 0;
  virtual void local_matrix(int cell, MatrixXd& out) const = 0;
};

/// Assembles the kernel over all cells. If `constrained` is non-null it must
/// have one flag per DOF; constrained rows/columns are eliminated
/// symmetrically (identity rows) already at pattern construction.
SparseSymMatrix assemble_matrix(int ndofs, const TetMesh& mesh,
                                const ElementKernel& kernel,
                                const std::vector<std::uint8_t>* constrained,
                                Threading threading);

struct SystemMatrices {
  SparseSymMatrix K;
  VectorXd rhs;
  SparseSymMatrix mass_u;  // raw L2 mass matrices (no elimination)
  SparseSymMatrix mass_P;
  int ndof_u = 0;
  int ndof_P = 0;
  std::vector<std::uint8_t> constrained;  // combined ordering: u then P
};

/// Discrete bilinear form of the coupled model on (u, P): elastic coupling
/// through sym(grad u - P), micro-self-energy and the Curl P curvature term.
/// Degree-2 quadrature is exact for these bases with cell-wise constant
/// coefficients.
SystemMatrices assemble_micromorphic(const FeSpace& space_u,
                                     const FeSpace& space_P,
                                     const MaterialModel& material,
                                     const Quadrature& quad,
                                     Threading threading = Threading::OpenMP,
                                     bool with_mass = true);

/// Load vector (f against u test functions, M against P test functions).
/// Raw moments: no boundary elimination is applied here.
VectorXd assemble_load(const FeSpace& space_u, const FeSpace& space_P,
                       const VectorFn& f, const TensorFn& m,
                       const Quadrature& quad,
                       Threading threading = Threading::OpenMP);

/// Gauge-model form on a tangentially constrained Nedelec space:
/// curvature + sym coupling + positive semi-definite skew coupling.
SystemMatrices assemble_gauge(const FeSpace& space_e,
                              const MaterialModel& material,
                              const Quadrature& quad,
                              Threading threading = Threading::OpenMP,
                              bool with_mass = true);

VectorXd assemble_load_gauge(const FeSpace& space_e, const TensorFn& m,
                             const Quadrature& quad,
                             Threading threading = Threading::OpenMP);

/// Raw L2 mass matrix of a space (block-diagonal over components/rows).
SparseSymMatrix assemble_mass(const FeSpace& space,
                              Threading threading = Threading::OpenMP);

/// Scalar building blocks used by the Helmholtz decomposition.
SparseSymMatrix assemble_p1_scalar_stiffness(const TetMesh& mesh,
                                             Threading threading = Threading::OpenMP);
SparseSymMatrix assemble_edge_mass(const TetMesh& mesh,
                                   Threading threading = Threading::OpenMP);

/// Pointwise discrete field evaluation.
struct UEval {
  Vec3 value = Vec3::Zero();
  Mat3 grad = Mat3::Zero();
};
UEval eval_lagrange_vec3(const FeSpace& space, const VectorXd& coeffs, int cell,
                         const Vec4& bary, const CellGeometry& geom);

struct PEval {
  Mat3 value = Mat3::Zero();
  Mat3 curl = Mat3::Zero();
};
PEval eval_nedelec_tensor3(const FeSpace& space, const VectorXd& coeffs,
                           int cell, const Vec4& bary, const CellGeometry& geom);

/// Quadratic energy of discrete fields evaluated by an independent
/// quadrature loop (not through the assembled matrix).
double micromorphic_energy(const FeSpace& space_u, const FeSpace& space_P,
                           const MaterialModel& material, const VectorXd& u,
                           const VectorXd& p, const Quadrature& quad,
                           Threading threading = Threading::OpenMP);

/// Cell-wise symmetric force stress C_e sym(grad u - P) and moment tensor
/// L_c Curl P at cell centroids.
struct StressMoment {
  std::vector<Mat3> stress;
  std::vector<Mat3> moment;
};
StressMoment postprocess_stress_moment(const FeSpace& space_u,
                                       const FeSpace& space_P,
                                       const MaterialModel& material,
                                       const VectorXd& u, const VectorXd& p);

/// Zeroes constrained entries (rhs preparation for the eliminated system).
void zero_constrained(VectorXd& v, const std::vector<std::uint8_t>& constrained);

}  // namespace rmm
