#include "rmm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rmm {

SparseSymMatrix SparseSymMatrix::from_adjacency(
    std::vector<std::vector<int>> adjacency) {
  SparseSymMatrix m;
  m.n_ = static_cast<int>(adjacency.size());
  m.row_ptr_.resize(m.n_ + 1, 0);
  for (int i = 0; i < m.n_; ++i) {
    auto& row = adjacency[i];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    m.row_ptr_[i + 1] = m.row_ptr_[i] + static_cast<int>(row.size());
  }
  m.col_idx_.reserve(m.row_ptr_[m.n_]);
  for (const auto& row : adjacency)
    m.col_idx_.insert(m.col_idx_.end(), row.begin(), row.end());
  m.values_.assign(m.col_idx_.size(), 0.0);
  return m;
}

namespace {
int find_entry(const std::vector<int>& row_ptr, const std::vector<int>& col_idx,
               int i, int j) {
  const auto begin = col_idx.begin() + row_ptr[i];
  const auto end = col_idx.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return -1;
  return static_cast<int>(it - col_idx.begin());
}
}  // namespace

void SparseSymMatrix::add(int i, int j, double v) {
  const int k = find_entry(row_ptr_, col_idx_, i, j);
  if (k < 0) throw std::runtime_error("SparseSymMatrix::add: entry not in pattern");
  values_[k] += v;
}

double SparseSymMatrix::coeff(int i, int j) const {
  const int k = find_entry(row_ptr_, col_idx_, i, j);
  return k < 0 ? 0.0 : values_[k];
}

double& SparseSymMatrix::diagonal_ref(int i) {
  const int k = find_entry(row_ptr_, col_idx_, i, i);
  if (k < 0) throw std::runtime_error("SparseSymMatrix: missing diagonal");
  return values_[k];
}

void SparseSymMatrix::multiply_serial(const VectorXd& x, VectorXd& y) const {
  y.resize(n_);
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      acc += values_[k] * x[col_idx_[k]];
    y[i] = acc;
  }
}

void SparseSymMatrix::multiply(const VectorXd& x, VectorXd& y,
                               Threading threading) const {
  if (threading == Threading::Serial) {
    multiply_serial(x, y);
    return;
  }
  y.resize(n_);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      acc += values_[k] * x[col_idx_[k]];
    y[i] = acc;
  }
}

void SparseSymMatrix::eliminate(const std::vector<int>& constrained) {
  std::vector<std::uint8_t> is_constrained(n_, 0);
  for (int d : constrained) is_constrained[d] = 1;
  for (int i = 0; i < n_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const int j = col_idx_[k];
      if (!is_constrained[i] && !is_constrained[j]) continue;
      values_[k] = (i == j) ? 1.0 : 0.0;
    }
}

SparseSymMatrix SparseSymMatrix::restricted(const std::vector<int>& keep) const {
  std::vector<int> global_to_local(n_, -1);
  for (size_t l = 0; l < keep.size(); ++l) global_to_local[keep[l]] = static_cast<int>(l);

  SparseSymMatrix r;
  r.n_ = static_cast<int>(keep.size());
  r.row_ptr_.resize(r.n_ + 1, 0);
  for (int l = 0; l < r.n_; ++l) {
    const int i = keep[l];
    int count = 0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      count += global_to_local[col_idx_[k]] >= 0;
    r.row_ptr_[l + 1] = r.row_ptr_[l] + count;
  }
  r.col_idx_.resize(r.row_ptr_[r.n_]);
  r.values_.resize(r.row_ptr_[r.n_]);
  for (int l = 0; l < r.n_; ++l) {
    const int i = keep[l];
    int out = r.row_ptr_[l];
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const int lj = global_to_local[col_idx_[k]];
      if (lj < 0) continue;
      r.col_idx_[out] = lj;
      r.values_[out] = values_[k];
      ++out;
    }
  }
  return r;
}

MatrixXd SparseSymMatrix::dense() const {
  MatrixXd d = MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      d(i, col_idx_[k]) = values_[k];
  return d;
}

double SparseSymMatrix::max_asymmetry() const {
  double defect = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      defect = std::max(defect,
                        std::abs(values_[k] - coeff(col_idx_[k], i)));
  return defect;
}

std::string CgResult::message() const {
  switch (status) {
    case CgStatus::Converged:
      return "converged";
    case CgStatus::MaxIterations:
      return "cg: no convergence within max_iter";
    case CgStatus::Breakdown:
      return "cg: non-positive curvature (matrix not SPD on this subspace)";
  }
  return {};
}

CgResult cg_solve(const SparseSymMatrix& a, const VectorXd& b,
                  const CgOptions& opts) {
  const int n = a.rows();
  if (b.size() != n) throw std::invalid_argument("cg_solve: size mismatch");
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;

  CgResult res;
  res.x = VectorXd::Zero(n);

  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.residual = 0.0;
    return res;
  }

  VectorXd inv_diag(n);
  if (opts.jacobi) {
    for (int i = 0; i < n; ++i) {
      const double d = a.coeff(i, i);
      inv_diag[i] = d > 0.0 ? 1.0 / d : 1.0;
    }
  }

  VectorXd r = b;
  VectorXd z = opts.jacobi ? VectorXd(inv_diag.cwiseProduct(r)) : r;
  VectorXd p = z;
  VectorXd ap(n);
  double rz = r.dot(z);
  if (opts.keep_history) res.history.push_back(std::sqrt(std::abs(rz)));

  for (int it = 0; it < max_iter; ++it) {
    a.multiply(p, ap, opts.threading);
    const double pap = p.dot(ap);
    if (pap <= 0.0) {
      res.status = CgStatus::Breakdown;
      res.iterations = it;
      res.residual = r.norm() / bnorm;
      return res;
    }
    const double alpha = rz / pap;
    res.x += alpha * p;
    r -= alpha * ap;
    res.iterations = it + 1;
    if (opts.jacobi)
      z = inv_diag.cwiseProduct(r);
    else
      z = r;
    const double rz_new = r.dot(z);
    if (opts.keep_history) res.history.push_back(std::sqrt(std::abs(rz_new)));
    if (r.norm() <= opts.rel_tol * bnorm) {
      res.residual = r.norm() / bnorm;
      return res;
    }
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }

  res.status = CgStatus::MaxIterations;
  res.residual = r.norm() / bnorm;
  return res;
}

EigResult smallest_generalized_eigenvalue(const SparseSymMatrix& k,
                                          const SparseSymMatrix& m, double tol,
                                          int max_iter, std::uint64_t seed) {
  const int n = k.rows();
  if (m.rows() != n)
    throw std::invalid_argument("smallest_generalized_eigenvalue: size mismatch");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = unit(rng);

  CgOptions inner;
  inner.rel_tol = 1e-12;

  EigResult res;
  VectorXd mx(n), kx(n);
  double rayleigh_prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    m.multiply(x, mx);
    const double mnorm = std::sqrt(x.dot(mx));
    if (mnorm == 0.0) throw std::runtime_error("inverse iteration: M-degenerate start");
    x /= mnorm;
    mx /= mnorm;

    CgResult solve = cg_solve(k, mx, inner);
    if (!solve.ok())
      throw std::runtime_error("inverse iteration inner solve failed: " +
                               solve.message());
    x = solve.x;

    k.multiply(x, kx);
    m.multiply(x, mx);
    const double rayleigh = x.dot(kx) / x.dot(mx);
    res.iterations = it + 1;
    if (it > 0 && std::abs(rayleigh - rayleigh_prev) <= tol * std::abs(rayleigh)) {
      res.converged = true;
      res.lambda = rayleigh;
      res.vector = x / std::sqrt(x.dot(mx));
      return res;
    }
    rayleigh_prev = rayleigh;
  }
  res.lambda = rayleigh_prev;
  res.vector = x;
  return res;
}

}  // namespace rmm
