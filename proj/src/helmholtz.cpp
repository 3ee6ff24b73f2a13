#include "rmm/helmholtz.hpp"

#include <cmath>
#include <stdexcept>

namespace rmm {

HelmholtzDecomposer::HelmholtzDecomposer(const FeSpace& space_P,
                                         Threading threading, double cg_tol)
    : space_(&space_P),
      mesh_(&space_P.mesh()),
      threading_(threading),
      cg_tol_(cg_tol) {
  if (space_P.kind() != SpaceKind::Nedelec0Tensor3)
    throw std::invalid_argument("HelmholtzDecomposer: needs the Nedelec space");

  edge_mass_ = assemble_edge_mass(*mesh_, threading_);
  poisson_ = assemble_p1_scalar_stiffness(*mesh_, threading_);

  vertex_constrained_.assign(mesh_->num_vertices(), 0);
  std::vector<int> constrained;
  for (int v = 0; v < mesh_->num_vertices(); ++v)
    if (mesh_->boundary_vertex(v)) {
      vertex_constrained_[v] = 1;
      constrained.push_back(v);
    }

  grad_test_norm_.resize(mesh_->num_vertices());
  for (int v = 0; v < mesh_->num_vertices(); ++v)
    grad_test_norm_[v] = std::sqrt(poisson_.coeff(v, v));

  poisson_.eliminate(constrained);
}

VectorXd HelmholtzDecomposer::include_gradient(const VectorXd& z) const {
  VectorXd g(mesh_->num_edges());
  for (int e = 0; e < mesh_->num_edges(); ++e)
    g[e] = z[mesh_->edge(e)[1]] - z[mesh_->edge(e)[0]];
  return g;
}

VectorXd HelmholtzDecomposer::include_gradient_tensor(const VectorXd& q) const {
  const int nv = mesh_->num_vertices();
  const int ne = mesh_->num_edges();
  VectorXd g(3 * ne);
  for (int r = 0; r < 3; ++r)
    g.segment(r * ne, ne) = include_gradient(q.segment(r * nv, nv));
  return g;
}

Decomposition HelmholtzDecomposer::decompose(const VectorXd& p) const {
  const int nv = mesh_->num_vertices();
  const int ne = mesh_->num_edges();
  if (p.size() != 3 * ne)
    throw std::invalid_argument("decompose: coefficient size mismatch");

  Decomposition d;
  d.q.resize(3 * nv);
  d.Q.resize(3 * ne);

  double np2 = 0.0, ng2 = 0.0, nq2 = 0.0;
  VectorXd mp(ne), tmp(ne);
  for (int r = 0; r < 3; ++r) {
    const VectorXd pr = p.segment(r * ne, ne);
    edge_mass_.multiply(pr, mp, threading_);

    // rhs_v = int <P_row, grad v>; exact through the gradient inclusion.
    VectorXd rhs = VectorXd::Zero(nv);
    for (int e = 0; e < ne; ++e) {
      rhs[mesh_->edge(e)[1]] += mp[e];
      rhs[mesh_->edge(e)[0]] -= mp[e];
    }
    for (int v = 0; v < nv; ++v)
      if (vertex_constrained_[v]) rhs[v] = 0.0;

    CgOptions opts;
    opts.rel_tol = cg_tol_;
    opts.threading = threading_;
    const CgResult solve = cg_solve(poisson_, rhs, opts);
    if (!solve.ok())
      throw std::runtime_error("Helmholtz row solve failed: " + solve.message());
    d.cg_iterations += solve.iterations;

    d.q.segment(r * nv, nv) = solve.x;
    const VectorXd gq = include_gradient(solve.x);
    const VectorXd qr = pr - gq;
    d.Q.segment(r * ne, ne) = qr;

    np2 += pr.dot(mp);
    edge_mass_.multiply(gq, tmp, threading_);
    ng2 += gq.dot(tmp);
    edge_mass_.multiply(qr, tmp, threading_);
    nq2 += qr.dot(tmp);

    // Weak divergence of Q against every interior P1 test function.
    VectorXd div_test = VectorXd::Zero(nv);
    for (int e = 0; e < ne; ++e) {
      div_test[mesh_->edge(e)[1]] += tmp[e];
      div_test[mesh_->edge(e)[0]] -= tmp[e];
    }
    const double qnorm = std::sqrt(std::max(qr.dot(tmp), 0.0));
    for (int v = 0; v < nv; ++v) {
      if (vertex_constrained_[v] || grad_test_norm_[v] == 0.0) continue;
      const double denom = qnorm > 0.0 ? qnorm * grad_test_norm_[v] : 1.0;
      d.divfree_defect = std::max(d.divfree_defect, std::abs(div_test[v]) / denom);
    }
  }

  d.norm_P = std::sqrt(std::max(np2, 0.0));
  d.norm_grad_q = std::sqrt(std::max(ng2, 0.0));
  d.norm_Q = std::sqrt(std::max(nq2, 0.0));
  d.pythagoras_defect =
      np2 > 0.0 ? std::abs(np2 - ng2 - nq2) / np2 : std::abs(ng2 + nq2);
  d.trace_max = tangential_trace_report(*space_, d.Q);
  return d;
}

double tangential_trace_report(const FeSpace& space_P, const VectorXd& Q) {
  double m = 0.0;
  for (int d : space_P.constrained_dofs()) m = std::max(m, std::abs(Q[d]));
  return m;
}

double broken_h1_seminorm(const FeSpace& space_P, const VectorXd& coeffs,
                          Threading threading) {
  const TetMesh& mesh = space_P.mesh();
  const int ncells = mesh.num_cells();
  std::vector<double> partial(ncells, 0.0);

  auto cell_term = [&](int cell) {
    const CellGeometry geom = mesh.cell_geometry(cell);
    const auto g = barycentric_gradients(geom);
    const auto& ce = mesh.cell_edges(cell);
    double acc = 0.0;
    for (int r = 0; r < 3; ++r) {
      Mat3 jac = Mat3::Zero();  // (k,m) = d_m (Q_row)_k, constant per cell
      for (int le = 0; le < 6; ++le) {
        const int a = kTetEdges[le][0], b = kTetEdges[le][1];
        const double coef =
            ce[le].sign * coeffs[space_P.dof(r, ce[le].edge)];
        jac += coef * (g[b] * g[a].transpose() - g[a] * g[b].transpose());
      }
      acc += geom.volume * jac.squaredNorm();
    }
    partial[cell] = acc;
  };

  if (threading == Threading::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < ncells; ++c) cell_term(c);
  } else {
    for (int c = 0; c < ncells; ++c) cell_term(c);
  }
  double total = 0.0;
  for (int c = 0; c < ncells; ++c) total += partial[c];
  return std::sqrt(total);
}

std::vector<H1ProbeRow> h1_boundedness_probe(const std::vector<int>& levels,
                                             const TensorFn& field,
                                             Threading threading) {
  std::vector<H1ProbeRow> rows;
  for (int n : levels) {
    const TetMesh mesh = TetMesh::unit_cube(n);
    const FeSpace space = FeSpace::build(mesh, SpaceKind::Nedelec0Tensor3);
    const VectorXd p = interpolate(space, field);
    HelmholtzDecomposer dec(space, threading);
    const Decomposition d = dec.decompose(p);
    rows.push_back({n, mesh.mesh_size(), d.norm_Q,
                    broken_h1_seminorm(space, d.Q, threading)});
  }
  return rows;
}

}  // namespace rmm
