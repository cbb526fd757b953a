#pragma once

#include <array>
#include <optional>
#include <vector>

#include "core/types.hpp"

namespace ppeflow {

enum class BoundaryTag : int {
  interior = 0,
  wall,
  lid,
  inflow,
  outflow,
  periodic_master,
  periodic_slave,
};

struct PointLocation {
  Index triangle = -1;
  std::array<double, 3> barycentric{};  // matches vertex order of the triangle
};

/// 2D triangulation with globally oriented edges.
///
/// Conventions:
///  - triangles store vertex indices in counterclockwise order;
///  - edges store (lo, hi) vertex pairs with lo < hi, the global edge
///    direction runs lo -> hi;
///  - local edge i of a triangle is the one opposite local vertex i,
///    traversed in the triangle's CCW order; its sign is +1 when that
///    traversal agrees with the global direction, -1 otherwise.
///
/// Immutable after construction; safe for concurrent reads.
class Mesh {
 public:
  std::vector<Vec2> vertices;
  std::vector<std::array<Index, 3>> triangles;
  std::vector<std::array<Index, 2>> edges;
  std::vector<std::array<Index, 3>> triangle_edges;
  std::vector<std::array<int, 3>> triangle_edge_signs;
  std::vector<std::array<Index, 2>> edge_triangles;  // (left, right); -1 when absent
  std::vector<BoundaryTag> edge_tags;                // interior for interior edges
  std::vector<std::pair<Index, Index>> periodic_pairs;  // (master_edge, slave_edge)
  Vec2 period{0.0, 0.0};  // translation master -> slave for periodic meshes

  Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles.size()); }
  Index num_edges() const { return static_cast<Index>(edges.size()); }

  bool is_boundary_edge(Index e) const { return edge_triangles[e][1] < 0; }
  /// Physical boundary excludes periodic seam edges.
  bool is_physical_boundary_edge(Index e) const {
    return is_boundary_edge(e) && edge_tags[e] != BoundaryTag::periodic_master &&
           edge_tags[e] != BoundaryTag::periodic_slave;
  }

  double triangle_area(Index t) const;
  /// Affine map x = v0 + J * xhat from the reference triangle.
  Mat2 jacobian(Index t) const;
  Vec2 triangle_vertex(Index t, int local) const { return vertices[triangles[t][local]]; }
  Vec2 edge_vector(Index e) const { return vertices[edges[e][1]] - vertices[edges[e][0]]; }
  double edge_length(Index e) const { return edge_vector(e).norm(); }
  /// Unit normal of the global edge direction, rotated -90 degrees
  /// (outward for a CCW triangle traversing the edge lo -> hi).
  Vec2 edge_normal(Index e) const;
  /// Outward unit normal of boundary edge e as seen from its single triangle.
  Vec2 boundary_outward_normal(Index e) const;

  double min_edge_length() const;
  double total_area() const;

  /// Containing triangle and barycentric coordinates. Ties on shared edges or
  /// vertices resolve to the lowest triangle index. Throws NotFound when the
  /// point lies outside every triangle by more than the geometric tolerance.
  PointLocation locate_point(const Vec2& x) const;

  /// Internal consistency checks (triangle orientation, edge adjacency,
  /// Euler relation, periodic pair geometry). Throws on violation.
  void validate() const;

 private:
  friend Mesh finalize_mesh(std::vector<Vec2> vertices,
                            std::vector<std::array<Index, 3>> triangles,
                            const std::vector<std::pair<Vec2, Vec2>>& tagged_segments,
                            const std::vector<BoundaryTag>& segment_tags, const Vec2& period);

  struct BinGrid {
    double x0 = 0, y0 = 0, dx = 1, dy = 1;
    int nx = 1, ny = 1;
    std::vector<std::vector<Index>> cells;
  };
  BinGrid bins_;
  void build_bins();
};

/// Criss-cross pattern on the unit square: n x n cells of side 1/n, each
/// split into four triangles by both diagonals (one center vertex per cell),
/// giving 4n^2 triangles. Boundary tags: lid on y=1, wall elsewhere. With
/// periodic_x, the edges on x=0 (masters) pair with the edges on x=1 (slaves).
Mesh build_unit_square_mesh(int n, bool periodic_x);

/// Backward-facing-step channel [0,L]x[-0.5,0.5] minus [0,0.5]x[-0.5,0],
/// block-structured criss-cross cells with geometric grading clustering the
/// smallest elements (~ h_min) at the re-entrant corner (0.5, 0) and along
/// the lower wall behind the step. Tags: inflow at x=0, outflow at x=L,
/// wall elsewhere.
Mesh build_step_mesh(double L, double h_min, double grading);

}  // namespace ppeflow
