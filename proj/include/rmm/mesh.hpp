#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rmm/types.hpp"

namespace rmm {

/// Affine map from the reference tetrahedron {x,y,z >= 0, x+y+z <= 1}
/// to a physical cell. Columns of `map` are the physical edge vectors
/// emanating from vertex 0; |det(map)| = 6 * volume.
struct CellGeometry {
  Mat3 map;
  Mat3 inv_transpose;
  double volume = 0.0;
};

struct BoundaryFace {
  int cell = -1;
  int local_face = -1;  // face opposite this local vertex
  Vec3 normal = Vec3::Zero();
  double area = 0.0;
};

/// Local edges of a tetrahedron, ordered (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Vertices of the face opposite each local vertex.
inline constexpr std::array<std::array<int, 3>, 4> kTetFaces = {
    {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};

/// Tetrahedral mesh of the unit cube: n^3 subcubes, each Kuhn-split into six
/// congruent tets sharing the subcube's main diagonal. Cells are consistently
/// positively oriented. Edges are stored once, oriented from low to high
/// vertex index; cell_edge gives per-cell (edge, sign) pairs where the sign
/// relates the cell-local direction to the stored global one.
///
/// The mesh is immutable after construction and safe for concurrent reads.
class TetMesh {
 public:
  static TetMesh unit_cube(int n);

  /// Uniform refinement: halves h. For the cube family built here this is
  /// exactly the 2n-subdivision mesh.
  TetMesh refined() const;

  CellGeometry cell_geometry(int cell) const;

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_faces() const { return num_faces_; }
  int subdivisions() const { return subdivisions_; }
  double mesh_size() const { return 1.0 / subdivisions_; }

  const Vec3& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 4>& cell(int c) const { return cells_[c]; }
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }

  struct EdgeRef {
    int edge;
    double sign;
  };
  const std::array<EdgeRef, 6>& cell_edges(int c) const { return cell_edge_[c]; }

  const std::vector<BoundaryFace>& boundary_faces() const { return boundary_faces_; }
  bool boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
  bool boundary_edge(int e) const { return boundary_edge_[e] != 0; }

  Vec3 cell_centroid(int c) const;
  Vec3 edge_midpoint(int e) const;

  /// Structural self-check: orientation, face incidence, Euler count,
  /// edge-sign consistency. Throws std::runtime_error on violation.
  void validate() const;

 private:
  TetMesh() = default;

  int subdivisions_ = 0;
  int num_faces_ = 0;
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 4>> cells_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<EdgeRef, 6>> cell_edge_;
  std::vector<BoundaryFace> boundary_faces_;
  std::vector<std::uint8_t> boundary_vertex_;
  std::vector<std::uint8_t> boundary_edge_;
};

}  // namespace rmm
