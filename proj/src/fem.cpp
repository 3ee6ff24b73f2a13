#include "rmm/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace rmm {

FeSpace FeSpace::build(const TetMesh& mesh, SpaceKind kind, int order) {
  FeSpace s;
  s.kind_ = kind;
  s.order_ = order;
  s.mesh_ = &mesh;

  if (kind == SpaceKind::LagrangeVec3) {
    if (order != 1 && order != 2)
      throw std::invalid_argument("FeSpace: Lagrange order must be 1 or 2");
    s.scalar_count_ =
        mesh.num_vertices() + (order == 2 ? mesh.num_edges() : 0);
    s.dof_count_ = 3 * s.scalar_count_;
    s.constrained_.assign(s.dof_count_, 0);
    for (int v = 0; v < mesh.num_vertices(); ++v)
      if (mesh.boundary_vertex(v))
        for (int c = 0; c < 3; ++c) s.constrained_[s.dof(c, v)] = 1;
    if (order == 2)
      for (int e = 0; e < mesh.num_edges(); ++e)
        if (mesh.boundary_edge(e))
          for (int c = 0; c < 3; ++c)
            s.constrained_[s.dof(c, mesh.num_vertices() + e)] = 1;
  } else {
    if (order != 1)
      throw std::invalid_argument("FeSpace: only lowest-order Nedelec");
    s.scalar_count_ = mesh.num_edges();
    s.dof_count_ = 3 * s.scalar_count_;
    s.constrained_.assign(s.dof_count_, 0);
    for (int e = 0; e < mesh.num_edges(); ++e)
      if (mesh.boundary_edge(e))
        for (int r = 0; r < 3; ++r) s.constrained_[s.dof(r, e)] = 1;
  }

  for (int d = 0; d < s.dof_count_; ++d)
    if (s.constrained_[d]) s.constrained_list_.push_back(d);
  return s;
}

std::vector<int> FeSpace::unconstrained_dofs() const {
  std::vector<int> out;
  out.reserve(dof_count_ - static_cast<int>(constrained_list_.size()));
  for (int d = 0; d < dof_count_; ++d)
    if (!constrained_[d]) out.push_back(d);
  return out;
}

int FeSpace::scalars_per_cell() const {
  if (kind_ == SpaceKind::Nedelec0Tensor3) return 6;
  return order_ == 1 ? 4 : 10;
}

void FeSpace::cell_scalars(int cell, std::array<DofRef, 10>& out) const {
  const auto& c = mesh_->cell(cell);
  if (kind_ == SpaceKind::LagrangeVec3) {
    for (int a = 0; a < 4; ++a) out[a] = {c[a], 1.0};
    if (order_ == 2) {
      const auto& ce = mesh_->cell_edges(cell);
      for (int le = 0; le < 6; ++le)
        out[4 + le] = {mesh_->num_vertices() + ce[le].edge, 1.0};
    }
  } else {
    const auto& ce = mesh_->cell_edges(cell);
    for (int le = 0; le < 6; ++le) out[le] = {ce[le].edge, ce[le].sign};
  }
}

void FeSpace::cell_dofs(int cell, std::vector<DofRef>& out) const {
  const int spc = scalars_per_cell();
  out.resize(3 * spc);
  std::array<DofRef, 10> scalars;
  cell_scalars(cell, scalars);
  for (int f = 0; f < 3; ++f)
    for (int a = 0; a < spc; ++a)
      out[f * spc + a] = {dof(f, scalars[a].index), scalars[a].sign};
}

Vec3 FeSpace::node_position(int node) const {
  if (kind_ != SpaceKind::LagrangeVec3)
    throw std::logic_error("node_position: Lagrange spaces only");
  if (node < mesh_->num_vertices()) return mesh_->vertex(node);
  return mesh_->edge_midpoint(node - mesh_->num_vertices());
}

LagrangeBasis eval_lagrange_basis(int order, const Vec4& bary) {
  LagrangeBasis b;
  const std::array<Vec3, 4> gl = {Vec3(-1, -1, -1), Vec3(1, 0, 0), Vec3(0, 1, 0),
                                  Vec3(0, 0, 1)};
  if (order == 1) {
    b.count = 4;
    for (int i = 0; i < 4; ++i) {
      b.value[i] = bary[i];
      b.grad_ref[i] = gl[i];
    }
    return b;
  }
  if (order != 2) throw std::invalid_argument("eval_lagrange_basis: order");
  b.count = 10;
  for (int i = 0; i < 4; ++i) {
    b.value[i] = bary[i] * (2.0 * bary[i] - 1.0);
    b.grad_ref[i] = (4.0 * bary[i] - 1.0) * gl[i];
  }
  for (int le = 0; le < 6; ++le) {
    const int a = kTetEdges[le][0], c = kTetEdges[le][1];
    b.value[4 + le] = 4.0 * bary[a] * bary[c];
    b.grad_ref[4 + le] = 4.0 * (bary[a] * gl[c] + bary[c] * gl[a]);
  }
  return b;
}

std::array<Vec3, 4> barycentric_gradients(const CellGeometry& geom) {
  std::array<Vec3, 4> g;
  g[1] = geom.inv_transpose.col(0);
  g[2] = geom.inv_transpose.col(1);
  g[3] = geom.inv_transpose.col(2);
  g[0] = -(g[1] + g[2] + g[3]);
  return g;
}

NedelecBasis eval_nedelec_basis(const CellGeometry& geom, const Vec4& bary) {
  const auto g = barycentric_gradients(geom);
  NedelecBasis b;
  for (int le = 0; le < 6; ++le) {
    const int i = kTetEdges[le][0], j = kTetEdges[le][1];
    b.value[le] = bary[i] * g[j] - bary[j] * g[i];
    b.curl[le] = 2.0 * g[i].cross(g[j]);
  }
  return b;
}

VectorXd interpolate(const FeSpace& space, const VectorFn& f) {
  if (space.kind() != SpaceKind::LagrangeVec3)
    throw std::invalid_argument("interpolate: vector field needs Lagrange space");
  VectorXd coeffs(space.dof_count());
  for (int node = 0; node < space.scalar_count(); ++node) {
    const Vec3 v = f(space.node_position(node));
    for (int c = 0; c < 3; ++c) coeffs[space.dof(c, node)] = v[c];
  }
  return coeffs;
}

VectorXd interpolate(const FeSpace& space, const TensorFn& f) {
  if (space.kind() != SpaceKind::Nedelec0Tensor3)
    throw std::invalid_argument("interpolate: tensor field needs Nedelec space");
  const TetMesh& mesh = space.mesh();
  VectorXd coeffs(space.dof_count());
  // Tangential moment int_e (row . t) ds by 2-point Gauss, exact for the
  // linear tangential traces of the space itself.
  const double s0 = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
  const double s1 = 0.5 * (1.0 + 1.0 / std::sqrt(3.0));
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Vec3& a = mesh.vertex(mesh.edge(e)[0]);
    const Vec3& b = mesh.vertex(mesh.edge(e)[1]);
    const Vec3 t = b - a;  // low -> high orientation
    const Mat3 f0 = f(a + s0 * t);
    const Mat3 f1 = f(a + s1 * t);
    for (int r = 0; r < 3; ++r)
      coeffs[space.dof(r, e)] = 0.5 * (f0.row(r) + f1.row(r)).dot(t);
  }
  return coeffs;
}

VectorXd interpolate_p1_scalar(const TetMesh& mesh,
                               const std::function<double(const Vec3&)>& f) {
  VectorXd z(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) z[v] = f(mesh.vertex(v));
  return z;
}

}  // namespace rmm
