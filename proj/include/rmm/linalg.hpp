#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmm/types.hpp"

namespace rmm {

/// Compressed-row sparse matrix with a structurally symmetric pattern (both
/// triangles stored). Column indices are sorted per row with no duplicates.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  /// Builds the zero matrix with the given pattern. `adjacency[i]` must list
  /// the nonzero columns of row i (i itself included for diagonal access).
  static SparseSymMatrix from_adjacency(std::vector<std::vector<int>> adjacency);

  int rows() const { return n_; }
  std::int64_t nonzeros() const { return static_cast<std::int64_t>(values_.size()); }

  /// Accumulates into an existing entry; throws if (i,j) is not in the
  /// pattern.
  void add(int i, int j, double v);
  double coeff(int i, int j) const;  // 0 if outside the pattern
  double& diagonal_ref(int i);

  /// y = A x. The OpenMP variant is row-parallel and bit-identical to the
  /// serial one (each row is an independent fixed-order dot product).
  void multiply(const VectorXd& x, VectorXd& y,
                Threading threading = Threading::OpenMP) const;
  void multiply_serial(const VectorXd& x, VectorXd& y) const;

  /// Symmetric elimination of constrained DOFs: zero row/column, unit
  /// diagonal.
  void eliminate(const std::vector<int>& constrained);

  /// Principal submatrix on `keep` (ascending unique indices).
  SparseSymMatrix restricted(const std::vector<int>& keep) const;

  MatrixXd dense() const;
  double max_asymmetry() const;

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  int n_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

struct CgOptions {
  double rel_tol = 1e-10;
  int max_iter = 0;  // 0: 10 * dimension
  bool jacobi = true;
  Threading threading = Threading::OpenMP;
  bool keep_history = false;
};

enum class CgStatus { Converged, MaxIterations, Breakdown };

struct CgResult {
  VectorXd x;
  int iterations = 0;
  double residual = 0.0;  // relative, ||Ax-b|| / ||b||
  CgStatus status = CgStatus::Converged;
  std::vector<double> history;  // preconditioned residual norms per iteration
  bool ok() const { return status == CgStatus::Converged; }
  std::string message() const;
};

/// Preconditioned conjugate gradients for SPD systems. All reductions run in
/// fixed order, so iteration counts and iterates are reproducible. Breakdown
/// (non-positive curvature) signals an SPD violation.
CgResult cg_solve(const SparseSymMatrix& a, const VectorXd& b,
                  const CgOptions& opts = {});

struct EigResult {
  double lambda = 0.0;
  VectorXd vector;
  int iterations = 0;
  bool converged = false;
};

/// Smallest generalized eigenvalue of K x = lambda M x (both SPD) by inverse
/// power iteration on K^{ -1} M with CG inner solves; stops when the Rayleigh
/// quotient is stationary to rel. tolerance `tol`.
EigResult smallest_generalized_eigenvalue(const SparseSymMatrix& k,
                                          const SparseSymMatrix& m, double tol,
                                          int max_iter = 200,
                                          std::uint64_t seed = 0x51edULL);

}  // namespace rmm
