#pragma once

#include <vector>

#include "rmm/assembly.hpp"
#include "rmm/fem.hpp"
#include "rmm/linalg.hpp"

namespace rmm {

/// Row-wise discrete Helmholtz decomposition P = grad(q) + Q of a
/// tangentially constrained Nedelec tensor field: q_i solves a discrete
/// Poisson problem in the P1 space with zero boundary values, the gradient is
/// included exactly into the edge space (signed nodal differences), and Q
/// carries the weakly divergence-free remainder.
struct Decomposition {
  VectorXd q;  // 3V, component-major P1 potentials
  VectorXd Q;  // 3E, row-major edge coefficients

  double norm_P = 0.0;      // L2 norms via the edge mass matrix
  double norm_grad_q = 0.0;
  double norm_Q = 0.0;

  double pythagoras_defect = 0.0;  // relative orthogonality defect
  double divfree_defect = 0.0;     // max normalized <Q_row, grad v> over tests
  double trace_max = 0.0;          // max |Q| over constrained DOFs (exact 0)
  int cg_iterations = 0;           // total over the three row solves
};

class HelmholtzDecomposer {
 public:
  HelmholtzDecomposer(const FeSpace& space_P,
                      Threading threading = Threading::OpenMP,
                      double cg_tol = 1e-12);

  Decomposition decompose(const VectorXd& p) const;

  /// Exact gradient-inclusion map: scalar P1 coefficients (V) to edge
  /// coefficients (E) via signed nodal differences along each edge.
  VectorXd include_gradient(const VectorXd& z) const;
  /// Row-wise version: 3V potentials to 3E tensor coefficients.
  VectorXd include_gradient_tensor(const VectorXd& q) const;

  const SparseSymMatrix& edge_mass() const { return edge_mass_; }
  const SparseSymMatrix& poisson() const { return poisson_; }

 private:
  const FeSpace* space_;
  const TetMesh* mesh_;
  Threading threading_;
  double cg_tol_;
  SparseSymMatrix poisson_;    // P1 stiffness with boundary vertices eliminated
  SparseSymMatrix edge_mass_;  // raw scalar edge mass
  std::vector<std::uint8_t> vertex_constrained_;
  std::vector<double> grad_test_norm_;  // ||grad v|| per vertex test function
};

/// Max constrained-DOF magnitude of a decomposed remainder (exactly zero for
/// any valid input by constraint algebra).
double tangential_trace_report(const FeSpace& space_P, const VectorXd& Q);

/// Cell-wise-gradient (broken H1) seminorm of an edge-space tensor field.
double broken_h1_seminorm(const FeSpace& space_P, const VectorXd& coeffs,
                          Threading threading = Threading::OpenMP);

struct H1ProbeRow {
  int n = 0;
  double h = 0.0;
  double norm_Q = 0.0;
  double broken_h1 = 0.0;
};

/// Interpolates the field on each refinement level, decomposes it and
/// reports the L2 norm and broken-H1 seminorm of the divergence-free part.
/// Boundedness of the seminorm under refinement is the diagnostic.
std::vector<H1ProbeRow> h1_boundedness_probe(const std::vector<int>& levels,
                                             const TensorFn& field,
                                             Threading threading = Threading::OpenMP);

}  // namespace rmm
