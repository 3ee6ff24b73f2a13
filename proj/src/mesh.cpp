#include "rmm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace rmm {

namespace {

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Mat3 m;
  m.col(0) = b - a;
  m.col(1) = c - a;
  m.col(2) = d - a;
  return m.determinant() / 6.0;
}

constexpr std::array<std::array<int, 3>, 6> kPermutations = {
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

}  // namespace

TetMesh TetMesh::unit_cube(int n) {
  if (n < 1) throw std::invalid_argument("TetMesh::unit_cube: n must be >= 1");

  TetMesh m;
  m.subdivisions_ = n;
  const int np = n + 1;
  const double h = 1.0 / n;

  m.vertices_.reserve(static_cast<size_t>(np) * np * np);
  for (int k = 0; k < np; ++k)
    for (int j = 0; j < np; ++j)
      for (int i = 0; i < np; ++i) m.vertices_.emplace_back(i * h, j * h, k * h);

  auto vid = [np](int i, int j, int k) { return i + np * (j + np * k); };

  // Kuhn split: walk from the subcube's low corner to its high corner along
  // each of the six axis orderings. Odd permutations get their last two
  // vertices swapped so every cell has positive volume.
  m.cells_.reserve(static_cast<size_t>(n) * n * n * 6);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto& perm : kPermutations) {
          std::array<std::array<int, 3>, 4> p;
          p[0] = {i, j, k};
          for (int s = 0; s < 3; ++s) {
            p[s + 1] = p[s];
            p[s + 1][perm[s]] += 1;
          }
          std::array<int, 4> cell;
          for (int s = 0; s < 4; ++s) cell[s] = vid(p[s][0], p[s][1], p[s][2]);
          if (signed_volume(m.vertices_[cell[0]], m.vertices_[cell[1]],
                            m.vertices_[cell[2]], m.vertices_[cell[3]]) < 0.0)
            std::swap(cell[2], cell[3]);
          m.cells_.push_back(cell);
        }

  // Global edge list: sorted vertex pairs, lexicographic order.
  std::vector<std::array<int, 2>> all_edges;
  all_edges.reserve(m.cells_.size() * 6);
  for (const auto& c : m.cells_)
    for (const auto& le : kTetEdges) {
      int a = c[le[0]], b = c[le[1]];
      if (a > b) std::swap(a, b);
      all_edges.push_back({a, b});
    }
  std::sort(all_edges.begin(), all_edges.end());
  all_edges.erase(std::unique(all_edges.begin(), all_edges.end()), all_edges.end());
  m.edges_ = std::move(all_edges);

  auto edge_index = [&m](int a, int b) {
    std::array<int, 2> key{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(m.edges_.begin(), m.edges_.end(), key);
    return static_cast<int>(it - m.edges_.begin());
  };

  m.cell_edge_.resize(m.cells_.size());
  for (size_t c = 0; c < m.cells_.size(); ++c) {
    const auto& cell = m.cells_[c];
    for (int le = 0; le < 6; ++le) {
      const int a = cell[kTetEdges[le][0]];
      const int b = cell[kTetEdges[le][1]];
      m.cell_edge_[c][le] = {edge_index(a, b), a < b ? 1.0 : -1.0};
    }
  }

  // Faces: sorted triples -> incidence count; count == 1 marks the boundary.
  std::map<std::array<int, 3>, int> face_count;
  for (const auto& c : m.cells_)
    for (const auto& lf : kTetFaces) {
      std::array<int, 3> key{c[lf[0]], c[lf[1]], c[lf[2]]};
      std::sort(key.begin(), key.end());
      ++face_count[key];
    }
  m.num_faces_ = static_cast<int>(face_count.size());

  m.boundary_vertex_.assign(m.vertices_.size(), 0);
  m.boundary_edge_.assign(m.edges_.size(), 0);
  for (size_t c = 0; c < m.cells_.size(); ++c) {
    const auto& cell = m.cells_[c];
    for (int lf = 0; lf < 4; ++lf) {
      std::array<int, 3> tri{cell[kTetFaces[lf][0]], cell[kTetFaces[lf][1]],
                             cell[kTetFaces[lf][2]]};
      std::array<int, 3> key = tri;
      std::sort(key.begin(), key.end());
      if (face_count.at(key) != 1) continue;

      const Vec3& a = m.vertices_[tri[0]];
      const Vec3& b = m.vertices_[tri[1]];
      const Vec3& d = m.vertices_[tri[2]];
      Vec3 normal = (b - a).cross(d - a);
      const double area = 0.5 * normal.norm();
      normal.normalize();
      const Vec3 opposite = m.vertices_[cell[lf]];
      if (normal.dot((a + b + d) / 3.0 - opposite) < 0.0) normal = -normal;

      m.boundary_faces_.push_back({static_cast<int>(c), lf, normal, area});
      for (int v : tri) m.boundary_vertex_[v] = 1;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          m.boundary_edge_[edge_index(tri[i], tri[j])] = 1;
    }
  }

  return m;
}

TetMesh TetMesh::refined() const { return unit_cube(2 * subdivisions_); }

CellGeometry TetMesh::cell_geometry(int cell) const {
  const auto& c = cells_[cell];
  CellGeometry g;
  const Vec3& v0 = vertices_[c[0]];
  g.map.col(0) = vertices_[c[1]] - v0;
  g.map.col(1) = vertices_[c[2]] - v0;
  g.map.col(2) = vertices_[c[3]] - v0;
  const double det = g.map.determinant();
  if (det <= 1e-300)
    throw std::runtime_error("TetMesh::cell_geometry: degenerate cell");
  g.volume = det / 6.0;
  g.inv_transpose = g.map.inverse().transpose();
  return g;
}

Vec3 TetMesh::cell_centroid(int c) const {
  const auto& cell = cells_[c];
  return 0.25 * (vertices_[cell[0]] + vertices_[cell[1]] + vertices_[cell[2]] +
                 vertices_[cell[3]]);
}

Vec3 TetMesh::edge_midpoint(int e) const {
  return 0.5 * (vertices_[edges_[e][0]] + vertices_[edges_[e][1]]);
}

void TetMesh::validate() const {
  for (int c = 0; c < num_cells(); ++c) {
    const auto& cell = cells_[c];
    if (signed_volume(vertices_[cell[0]], vertices_[cell[1]], vertices_[cell[2]],
                      vertices_[cell[3]]) <= 0.0)
      throw std::runtime_error("mesh: non-positive cell volume");
    for (int le = 0; le < 6; ++le) {
      const auto ref = cell_edge_[c][le];
      const int a = cell[kTetEdges[le][0]];
      const int b = cell[kTetEdges[le][1]];
      const auto& ge = edges_[ref.edge];
      const bool fwd = ge[0] == a && ge[1] == b;
      const bool rev = ge[0] == b && ge[1] == a;
      if (!(fwd || rev) || ref.sign != (fwd ? 1.0 : -1.0))
        throw std::runtime_error("mesh: inconsistent edge sign table");
    }
  }

  std::map<std::array<int, 3>, int> face_count;
  for (const auto& c : cells_)
    for (const auto& lf : kTetFaces) {
      std::array<int, 3> key{c[lf[0]], c[lf[1]], c[lf[2]]};
      std::sort(key.begin(), key.end());
      ++face_count[key];
    }
  int boundary = 0;
  for (const auto& [key, count] : face_count) {
    if (count != 1 && count != 2)
      throw std::runtime_error("mesh: face shared by more than two cells");
    boundary += count == 1;
  }
  if (boundary != static_cast<int>(boundary_faces_.size()))
    throw std::runtime_error("mesh: boundary face bookkeeping mismatch");

  const long long euler = static_cast<long long>(num_vertices()) - num_edges() +
                          num_faces_ - num_cells();
  if (euler != 1) throw std::runtime_error("mesh: Euler characteristic != 1");
}

}  // namespace rmm
