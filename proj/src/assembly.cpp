#include "rmm/assembly.hpp"

#include <stdexcept>

namespace rmm {

namespace {

constexpr int kBatch = 512;

std::vector<std::vector<int>> dof_cells(int ndofs, const TetMesh& mesh,
                                        const ElementKernel& kernel) {
  std::vector<std::vector<int>> cells_of(ndofs);
  std::vector<DofRef> dofs;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    kernel.cell_dofs(c, dofs);
    for (const auto& d : dofs) cells_of[d.index].push_back(c);
  }
  return cells_of;
}

}  // namespace

SparseSymMatrix assemble_matrix(int ndofs, const TetMesh& mesh,
                                const ElementKernel& kernel,
                                const std::vector<std::uint8_t>* constrained,
                                Threading threading) {
  // Pattern: row i is the union of the DOF lists of cells touching i,
  // reduced to {i} for constrained rows. Diagonals are always present.
  const auto cells_of = dof_cells(ndofs, mesh, kernel);
  std::vector<std::vector<int>> adjacency(ndofs);
  {
    std::vector<DofRef> dofs;
    std::vector<int> scratch;
    for (int i = 0; i < ndofs; ++i) {
      scratch.clear();
      scratch.push_back(i);
      if (!constrained || !(*constrained)[i]) {
        for (int c : cells_of[i]) {
          kernel.cell_dofs(c, dofs);
          for (const auto& d : dofs)
            if (!constrained || !(*constrained)[d.index])
              scratch.push_back(d.index);
        }
      }
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
      adjacency[i] = scratch;
    }
  }
  SparseSymMatrix mat = SparseSymMatrix::from_adjacency(std::move(adjacency));

  // Values: local matrices for a batch of cells in parallel, then a serial
  // scatter in ascending cell order. The floating-point accumulation order is
  // the same as a fully serial assembly for any thread count.
  const int ncells = mesh.num_cells();
  const int local = kernel.local_size();
  std::vector<MatrixXd> locals(std::min(kBatch, ncells),
                               MatrixXd::Zero(local, local));
  std::vector<DofRef> dofs;
  for (int begin = 0; begin < ncells; begin += kBatch) {
    const int count = std::min(kBatch, ncells - begin);
    if (threading == Threading::OpenMP) {
#pragma omp parallel for schedule(static)
      for (int b = 0; b < count; ++b) kernel.local_matrix(begin + b, locals[b]);
    } else {
      for (int b = 0; b < count; ++b) kernel.local_matrix(begin + b, locals[b]);
    }
    for (int b = 0; b < count; ++b) {
      kernel.cell_dofs(begin + b, dofs);
      const MatrixXd& lm = locals[b];
      for (int a = 0; a < local; ++a) {
        const int i = dofs[a].index;
        if (constrained && (*constrained)[i]) continue;
        for (int c = 0; c < local; ++c) {
          const int j = dofs[c].index;
          if (constrained && (*constrained)[j]) continue;
          mat.add(i, j, dofs[a].sign * dofs[c].sign * lm(a, c));
        }
      }
    }
  }

  if (constrained)
    for (int i = 0; i < ndofs; ++i)
      if ((*constrained)[i]) mat.diagonal_ref(i) = 1.0;
  return mat;
}

namespace {

// ---------------------------------------------------------------------------
// Kernels

Mat3 dyad_row(int r, const Vec3& v) {
  Mat3 m = Mat3::Zero();
  m.row(r) = v.transpose();
  return m;
}

struct MicromorphicKernel final : ElementKernel {
  const FeSpace& su;
  const FeSpace& sp;
  const MaterialModel& mat;
  const Quadrature& quad;
  int nu_loc, np_loc;

  MicromorphicKernel(const FeSpace& su_, const FeSpace& sp_,
                     const MaterialModel& m_, const Quadrature& q_)
      : su(su_), sp(sp_), mat(m_), quad(q_) {
    nu_loc = su.dofs_per_cell();
    np_loc = sp.dofs_per_cell();
  }

  int local_size() const override { return nu_loc + np_loc; }

  void cell_dofs(int cell, std::vector<DofRef>& out) const override {
    std::vector<DofRef> pu, pp;
    su.cell_dofs(cell, pu);
    sp.cell_dofs(cell, pp);
    out.resize(nu_loc + np_loc);
    for (int a = 0; a < nu_loc; ++a) out[a] = pu[a];
    for (int a = 0; a < np_loc; ++a)
      out[nu_loc + a] = {su.dof_count() + pp[a].index, pp[a].sign};
  }

  void local_matrix(int cell, MatrixXd& out) const override {
    const TetMesh& mesh = su.mesh();
    const CellGeometry geom = mesh.cell_geometry(cell);
    const Vec3 xc = mesh.cell_centroid(cell);
    const Mat6 ce = mat.scale_e(xc) * mat.Ce;
    const Mat6 cep = ce + mat.scale_micro(xc) * mat.Cmicro;
    const Mat9 lc = mat.scale_lc(xc) * mat.Lc;

    out.setZero(local_size(), local_size());
    const int npc = su.scalars_per_cell();

    // Constant-per-cell curvature part.
    const NedelecBasis nb0 = eval_nedelec_basis(geom, Vec4(0.25, 0.25, 0.25, 0.25));
    std::array<Vec9, 18> curlv;
    for (int r = 0; r < 3; ++r)
      for (int le = 0; le < 6; ++le)
        curlv[6 * r + le] = rowvec(dyad_row(r, nb0.curl[le]));
    for (int i = 0; i < np_loc; ++i) {
      const Vec9 lci = lc * curlv[i];
      for (int j = 0; j < np_loc; ++j)
        out(nu_loc + i, nu_loc + j) += geom.volume * lci.dot(curlv[j]);
    }

    std::array<Vec6, 30> su6;
    std::array<Vec6, 18> sp6;
    for (int q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * 6.0 * geom.volume;
      const LagrangeBasis lb = eval_lagrange_basis(su.order(), quad.points[q]);
      const NedelecBasis nb = eval_nedelec_basis(geom, quad.points[q]);
      for (int c = 0; c < 3; ++c)
        for (int a = 0; a < npc; ++a)
          su6[c * npc + a] =
              mandel(sym_part(dyad_row(c, geom.inv_transpose * lb.grad_ref[a])));
      for (int r = 0; r < 3; ++r)
        for (int le = 0; le < 6; ++le)
          sp6[6 * r + le] = mandel(sym_part(dyad_row(r, nb.value[le])));

      for (int i = 0; i < nu_loc; ++i) {
        const Vec6 cei = ce * su6[i];
        for (int j = 0; j <= i; ++j) {
          const double v = w * cei.dot(su6[j]);
          out(i, j) += v;
          if (i != j) out(j, i) += v;
        }
        for (int j = 0; j < np_loc; ++j) {
          const double v = -w * cei.dot(sp6[j]);
          out(i, nu_loc + j) += v;
          out(nu_loc + j, i) += v;
        }
      }
      for (int i = 0; i < np_loc; ++i) {
        const Vec6 ci = cep * sp6[i];
        for (int j = 0; j <= i; ++j) {
          const double v = w * ci.dot(sp6[j]);
          out(nu_loc + i, nu_loc + j) += v;
          if (i != j) out(nu_loc + j, nu_loc + i) += v;
        }
      }
    }
  }
};

struct GaugeKernel final : ElementKernel {
  const FeSpace& se;
  const MaterialModel& mat;
  const Quadrature& quad;

  GaugeKernel(const FeSpace& se_, const MaterialModel& m_, const Quadrature& q_)
      : se(se_), mat(m_), quad(q_) {}

  int local_size() const override { return 18; }

  void cell_dofs(int cell, std::vector<DofRef>& out) const override {
    se.cell_dofs(cell, out);
  }

  void local_matrix(int cell, MatrixXd& out) const override {
    const TetMesh& mesh = se.mesh();
    const CellGeometry geom = mesh.cell_geometry(cell);
    const Vec3 xc = mesh.cell_centroid(cell);
    const Mat6 ce = mat.scale_e(xc) * mat.Ce;
    const Mat9 lc = mat.scale_lc(xc) * mat.Lc;
    const double two_mu_c = 2.0 * mat.mu_c;

    out.setZero(18, 18);

    const NedelecBasis nb0 = eval_nedelec_basis(geom, Vec4(0.25, 0.25, 0.25, 0.25));
    std::array<Vec9, 18> curlv;
    for (int r = 0; r < 3; ++r)
      for (int le = 0; le < 6; ++le)
        curlv[6 * r + le] = rowvec(dyad_row(r, nb0.curl[le]));
    for (int i = 0; i < 18; ++i) {
      const Vec9 lci = lc * curlv[i];
      for (int j = 0; j < 18; ++j) out(i, j) += geom.volume * lci.dot(curlv[j]);
    }

    std::array<Vec6, 18> sym6;
    std::array<Vec9, 18> skew9;
    for (int q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * 6.0 * geom.volume;
      const NedelecBasis nb = eval_nedelec_basis(geom, quad.points[q]);
      for (int r = 0; r < 3; ++r)
        for (int le = 0; le < 6; ++le) {
          const Mat3 phi = dyad_row(r, nb.value[le]);
          sym6[6 * r + le] = mandel(sym_part(phi));
          skew9[6 * r + le] = rowvec(skew_part(phi));
        }
      for (int i = 0; i < 18; ++i) {
        const Vec6 ci = ce * sym6[i];
        for (int j = 0; j <= i; ++j) {
          double v = w * ci.dot(sym6[j]);
          if (two_mu_c != 0.0) v += w * two_mu_c * skew9[i].dot(skew9[j]);
          out(i, j) += v;
          if (i != j) out(j, i) += v;
        }
      }
    }
  }
};

struct MassKernel final : ElementKernel {
  const FeSpace& space;
  const Quadrature& quad;

  MassKernel(const FeSpace& s_, const Quadrature& q_) : space(s_), quad(q_) {}

  int local_size() const override { return space.dofs_per_cell(); }

  void cell_dofs(int cell, std::vector<DofRef>& out) const override {
    space.cell_dofs(cell, out);
  }

  void local_matrix(int cell, MatrixXd& out) const override {
    const CellGeometry geom = space.mesh().cell_geometry(cell);
    const int spc = space.scalars_per_cell();
    out.setZero(local_size(), local_size());
    MatrixXd scalar = MatrixXd::Zero(spc, spc);
    for (int q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * 6.0 * geom.volume;
      if (space.kind() == SpaceKind::LagrangeVec3) {
        const LagrangeBasis lb = eval_lagrange_basis(space.order(), quad.points[q]);
        for (int a = 0; a < spc; ++a)
          for (int b = 0; b <= a; ++b) {
            const double v = w * lb.value[a] * lb.value[b];
            scalar(a, b) += v;
            if (a != b) scalar(b, a) += v;
          }
      } else {
        const NedelecBasis nb = eval_nedelec_basis(geom, quad.points[q]);
        for (int a = 0; a < spc; ++a)
          for (int b = 0; b <= a; ++b) {
            const double v = w * nb.value[a].dot(nb.value[b]);
            scalar(a, b) += v;
            if (a != b) scalar(b, a) += v;
          }
      }
    }
    // Component/row blocks are identical and decoupled.
    for (int f = 0; f < 3; ++f)
      out.block(f * spc, f * spc, spc, spc) = scalar;
  }
};

struct ScalarP1StiffnessKernel final : ElementKernel {
  const TetMesh& mesh;
  explicit ScalarP1StiffnessKernel(const TetMesh& m_) : mesh(m_) {}

  int local_size() const override { return 4; }

  void cell_dofs(int cell, std::vector<DofRef>& out) const override {
    out.resize(4);
    const auto& c = mesh.cell(cell);
    for (int a = 0; a < 4; ++a) out[a] = {c[a], 1.0};
  }

  void local_matrix(int cell, MatrixXd& out) const override {
    const CellGeometry geom = mesh.cell_geometry(cell);
    const auto g = barycentric_gradients(geom);
    out.setZero(4, 4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out(a, b) = geom.volume * g[a].dot(g[b]);
  }
};

struct ScalarEdgeMassKernel final : ElementKernel {
  const TetMesh& mesh;
  const Quadrature& quad;
  ScalarEdgeMassKernel(const TetMesh& m_, const Quadrature& q_)
      : mesh(m_), quad(q_) {}

  int local_size() const override { return 6; }

  void cell_dofs(int cell, std::vector<DofRef>& out) const override {
    out.resize(6);
    const auto& ce = mesh.cell_edges(cell);
    for (int le = 0; le < 6; ++le) out[le] = {ce[le].edge, ce[le].sign};
  }

  void local_matrix(int cell, MatrixXd& out) const override {
    const CellGeometry geom = mesh.cell_geometry(cell);
    out.setZero(6, 6);
    for (int q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * 6.0 * geom.volume;
      const NedelecBasis nb = eval_nedelec_basis(geom, quad.points[q]);
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b <= a; ++b) {
          const double v = w * nb.value[a].dot(nb.value[b]);
          out(a, b) += v;
          if (a != b) out(b, a) += v;
        }
    }
  }
};

// Vector assembly with the same batched deterministic layout.
template <typename LocalVec>
VectorXd assemble_vector_impl(int ndofs, const TetMesh& mesh, int local,
                              const std::function<void(int, std::vector<DofRef>&)>& dofs_of,
                              const LocalVec& local_vector, Threading threading) {
  VectorXd rhs = VectorXd::Zero(ndofs);
  const int ncells = mesh.num_cells();
  std::vector<VectorXd> locals(std::min(kBatch, ncells), VectorXd::Zero(local));
  std::vector<DofRef> dofs;
  for (int begin = 0; begin < ncells; begin += kBatch) {
    const int count = std::min(kBatch, ncells - begin);
    if (threading == Threading::OpenMP) {
#pragma omp parallel for schedule(static)
      for (int b = 0; b < count; ++b) local_vector(begin + b, locals[b]);
    } else {
      for (int b = 0; b < count; ++b) local_vector(begin + b, locals[b]);
    }
    for (int b = 0; b < count; ++b) {
      dofs_of(begin + b, dofs);
      for (int a = 0; a < local; ++a)
        rhs[dofs[a].index] += dofs[a].sign * locals[b][a];
    }
  }
  return rhs;
}

}  // namespace

SystemMatrices assemble_micromorphic(const FeSpace& space_u,
                                     const FeSpace& space_P,
                                     const MaterialModel& material,
                                     const Quadrature& quad, Threading threading,
                                     bool with_mass) {
  if (&space_u.mesh() != &space_P.mesh())
    throw std::invalid_argument("assemble_micromorphic: spaces on different meshes");
  if (space_u.kind() != SpaceKind::LagrangeVec3 ||
      space_P.kind() != SpaceKind::Nedelec0Tensor3)
    throw std::invalid_argument("assemble_micromorphic: wrong space kinds");

  SystemMatrices sys;
  sys.ndof_u = space_u.dof_count();
  sys.ndof_P = space_P.dof_count();
  sys.constrained.assign(sys.ndof_u + sys.ndof_P, 0);
  for (int d = 0; d < sys.ndof_u; ++d)
    sys.constrained[d] = space_u.constrained(d);
  for (int d = 0; d < sys.ndof_P; ++d)
    sys.constrained[sys.ndof_u + d] = space_P.constrained(d);

  MicromorphicKernel kernel(space_u, space_P, material, quad);
  sys.K = assemble_matrix(sys.ndof_u + sys.ndof_P, space_u.mesh(), kernel,
                          &sys.constrained, threading);
  if (with_mass) {
    sys.mass_u = assemble_mass(space_u, threading);
    sys.mass_P = assemble_mass(space_P, threading);
  }
  return sys;
}

VectorXd assemble_load(const FeSpace& space_u, const FeSpace& space_P,
                       const VectorFn& f, const TensorFn& m,
                       const Quadrature& quad, Threading threading) {
  const TetMesh& mesh = space_u.mesh();
  const int nu = space_u.dof_count();
  const int nu_loc = space_u.dofs_per_cell();
  const int local = nu_loc + space_P.dofs_per_cell();
  const int npc = space_u.scalars_per_cell();

  auto dofs_of = [&](int cell, std::vector<DofRef>& out) {
    std::vector<DofRef> pu, pp;
    space_u.cell_dofs(cell, pu);
    space_P.cell_dofs(cell, pp);
    out.resize(local);
    for (int a = 0; a < nu_loc; ++a) out[a] = pu[a];
    for (size_t a = 0; a < pp.size(); ++a)
      out[nu_loc + a] = {nu + pp[a].index, pp[a].sign};
  };

  auto local_vector = [&](int cell, VectorXd& out) {
    const CellGeometry geom = mesh.cell_geometry(cell);
    const auto& cv = mesh.cell(cell);
    out.setZero(local);
    for (int q = 0; q < quad.size(); ++q) {
      const Vec4& bary = quad.points[q];
      const Vec3 x = bary[0] * mesh.vertex(cv[0]) + bary[1] * mesh.vertex(cv[1]) +
                     bary[2] * mesh.vertex(cv[2]) + bary[3] * mesh.vertex(cv[3]);
      const double w = quad.weights[q] * 6.0 * geom.volume;
      const Vec3 fx = f(x);
      const Mat3 mx = m(x);
      const LagrangeBasis lb = eval_lagrange_basis(space_u.order(), bary);
      for (int c = 0; c < 3; ++c)
        for (int a = 0; a < npc; ++a)
          out[c * npc + a] += w * fx[c] * lb.value[a];
      const NedelecBasis nb = eval_nedelec_basis(geom, bary);
      for (int r = 0; r < 3; ++r)
        for (int le = 0; le < 6; ++le)
          out[nu_loc + 6 * r + le] += w * mx.row(r).dot(nb.value[le]);
    }
  };

  return assemble_vector_impl(nu + space_P.dof_count(), mesh, local, dofs_of,
                              local_vector, threading);
}

SystemMatrices assemble_gauge(const FeSpace& space_e,
                              const MaterialModel& material,
                              const Quadrature& quad, Threading threading,
                              bool with_mass) {
  if (space_e.kind() != SpaceKind::Nedelec0Tensor3)
    throw std::invalid_argument("assemble_gauge: needs the Nedelec tensor space");
  SystemMatrices sys;
  sys.ndof_u = 0;
  sys.ndof_P = space_e.dof_count();
  sys.constrained.assign(sys.ndof_P, 0);
  for (int d = 0; d < sys.ndof_P; ++d) sys.constrained[d] = space_e.constrained(d);

  GaugeKernel kernel(space_e, material, quad);
  sys.K = assemble_matrix(sys.ndof_P, space_e.mesh(), kernel, &sys.constrained,
                          threading);
  if (with_mass) sys.mass_P = assemble_mass(space_e, threading);
  return sys;
}

VectorXd assemble_load_gauge(const FeSpace& space_e, const TensorFn& m,
                             const Quadrature& quad, Threading threading) {
  const TetMesh& mesh = space_e.mesh();
  auto dofs_of = [&](int cell, std::vector<DofRef>& out) {
    space_e.cell_dofs(cell, out);
  };
  auto local_vector = [&](int cell, VectorXd& out) {
    const CellGeometry geom = mesh.cell_geometry(cell);
    const auto& cv = mesh.cell(cell);
    out.setZero(18);
    for (int q = 0; q < quad.size(); ++q) {
      const Vec4& bary = quad.points[q];
      const Vec3 x = bary[0] * mesh.vertex(cv[0]) + bary[1] * mesh.vertex(cv[1]) +
                     bary[2] * mesh.vertex(cv[2]) + bary[3] * mesh.vertex(cv[3]);
      const double w = quad.weights[q] * 6.0 * geom.volume;
      const Mat3 mx = m(x);
      const NedelecBasis nb = eval_nedelec_basis(geom, bary);
      for (int r = 0; r < 3; ++r)
        for (int le = 0; le < 6; ++le)
          out[6 * r + le] += w * mx.row(r).dot(nb.value[le]);
    }
  };
  return assemble_vector_impl(space_e.dof_count(), mesh, 18, dofs_of,
                              local_vector, threading);
}

SparseSymMatrix assemble_mass(const FeSpace& space, Threading threading) {
  const Quadrature quad = quadrature(space.order() == 2 ? 4 : 2);
  MassKernel kernel(space, quad);
  return assemble_matrix(space.dof_count(), space.mesh(), kernel, nullptr,
                         threading);
}

SparseSymMatrix assemble_p1_scalar_stiffness(const TetMesh& mesh,
                                             Threading threading) {
  ScalarP1StiffnessKernel kernel(mesh);
  return assemble_matrix(mesh.num_vertices(), mesh, kernel, nullptr, threading);
}

SparseSymMatrix assemble_edge_mass(const TetMesh& mesh, Threading threading) {
  const Quadrature quad = quadrature(2);
  ScalarEdgeMassKernel kernel(mesh, quad);
  return assemble_matrix(mesh.num_edges(), mesh, kernel, nullptr, threading);
}

UEval eval_lagrange_vec3(const FeSpace& space, const VectorXd& coeffs, int cell,
                         const Vec4& bary, const CellGeometry& geom) {
  UEval out;
  const LagrangeBasis lb = eval_lagrange_basis(space.order(), bary);
  std::array<DofRef, 10> scalars;
  space.cell_scalars(cell, scalars);
  for (int a = 0; a < lb.count; ++a) {
    const Vec3 grad = geom.inv_transpose * lb.grad_ref[a];
    for (int c = 0; c < 3; ++c) {
      const double coef = coeffs[space.dof(c, scalars[a].index)];
      out.value[c] += coef * lb.value[a];
      out.grad.row(c) += coef * grad.transpose();
    }
  }
  return out;
}

PEval eval_nedelec_tensor3(const FeSpace& space, const VectorXd& coeffs,
                           int cell, const Vec4& bary, const CellGeometry& geom) {
  PEval out;
  const NedelecBasis nb = eval_nedelec_basis(geom, bary);
  std::array<DofRef, 10> scalars;
  space.cell_scalars(cell, scalars);
  for (int le = 0; le < 6; ++le) {
    for (int r = 0; r < 3; ++r) {
      const double coef =
          scalars[le].sign * coeffs[space.dof(r, scalars[le].index)];
      out.value.row(r) += coef * nb.value[le].transpose();
      out.curl.row(r) += coef * nb.curl[le].transpose();
    }
  }
  return out;
}

double micromorphic_energy(const FeSpace& space_u, const FeSpace& space_P,
                           const MaterialModel& material, const VectorXd& u,
                           const VectorXd& p, const Quadrature& quad,
                           Threading threading) {
  const TetMesh& mesh = space_u.mesh();
  const int ncells = mesh.num_cells();
  std::vector<double> partial(ncells, 0.0);

  auto cell_energy = [&](int cell) {
    const CellGeometry geom = mesh.cell_geometry(cell);
    const Vec3 xc = mesh.cell_centroid(cell);
    const Mat6 ce = material.scale_e(xc) * material.Ce;
    const Mat6 cm = material.scale_micro(xc) * material.Cmicro;
    const Mat9 lc = material.scale_lc(xc) * material.Lc;
    double acc = 0.0;
    for (int q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * 6.0 * geom.volume;
      const UEval ue = eval_lagrange_vec3(space_u, u, cell, quad.points[q], geom);
      const PEval pe = eval_nedelec_tensor3(space_P, p, cell, quad.points[q], geom);
      const Vec6 e = mandel(sym_part(ue.grad - pe.value));
      const Vec6 sp = mandel(sym_part(pe.value));
      const Vec9 cp = rowvec(pe.curl);
      acc += w * (e.dot(ce * e) + sp.dot(cm * sp) + cp.dot(lc * cp));
    }
    partial[cell] = acc;
  };

  if (threading == Threading::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < ncells; ++c) cell_energy(c);
  } else {
    for (int c = 0; c < ncells; ++c) cell_energy(c);
  }
  double total = 0.0;
  for (int c = 0; c < ncells; ++c) total += partial[c];
  return total;
}

StressMoment postprocess_stress_moment(const FeSpace& space_u,
                                       const FeSpace& space_P,
                                       const MaterialModel& material,
                                       const VectorXd& u, const VectorXd& p) {
  const TetMesh& mesh = space_u.mesh();
  StressMoment out;
  out.stress.resize(mesh.num_cells());
  out.moment.resize(mesh.num_cells());
  const Vec4 centroid(0.25, 0.25, 0.25, 0.25);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geom = mesh.cell_geometry(c);
    const Vec3 xc = mesh.cell_centroid(c);
    const UEval ue = eval_lagrange_vec3(space_u, u, c, centroid, geom);
    const PEval pe = eval_nedelec_tensor3(space_P, p, c, centroid, geom);
    const Vec6 strain = mandel(sym_part(ue.grad - pe.value));
    out.stress[c] = mandel_to_mat(material.scale_e(xc) * material.Ce * strain);
    out.moment[c] =
        rowvec_to_mat(material.scale_lc(xc) * material.Lc * rowvec(pe.curl));
  }
  return out;
}

void zero_constrained(VectorXd& v, const std::vector<std::uint8_t>& constrained) {
  for (size_t i = 0; i < constrained.size(); ++i)
    if (constrained[i]) v[static_cast<int>(i)] = 0.0;
}

}  // namespace rmm
