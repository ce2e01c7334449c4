#pragma once

#include <lcg/types.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lcg {

/// What lies across edge i = (v_i, v_{i+1}) of a triangle.
struct EdgeNeighbor {
  Index element = -1;          ///< neighbor triangle, -1 on the domain boundary
  int edge = -1;               ///< matching edge index inside the neighbor
  std::optional<Side> side;    ///< set iff the edge lies on the boundary
};

struct BoundaryEdge {
  std::array<Index, 2> v;
  Side side;
};

/// Structured triangulation of the unit square: n x n cells, each split along
/// its bottom-left to top-right diagonal. Triangles are counter-clockwise.
struct TriMesh {
  int n = 0;
  double h = 0.0;
  std::vector<Vec2> vertices;
  std::vector<std::array<Index, 3>> triangles;
  std::vector<std::array<EdgeNeighbor, 3>> neighbors;
  std::vector<BoundaryEdge> boundary_edges;

  Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  Index num_elements() const { return static_cast<Index>(triangles.size()); }
  double area(Index e) const;
  Vec2 centroid(Index e) const;

  /// Element containing x (closed unit square); ties resolve to the lower cell.
  Index locate(const Vec2& x) const;
};

TriMesh build_structured_mesh(int n);

enum class DofClass : std::uint8_t { Interior, Dirichlet, NeumannBoundary };

/// P1 / P2 Lagrange degrees of freedom.
///
/// Dofs live on the uniform lattice of spacing 1/(k n); dof (I, J) has global
/// index J (k n + 1) + I. For k = 2, local ordering on an element is the three
/// vertices followed by the midpoints of edges (0,1), (1,2), (2,0).
struct DofMap {
  int order = 1;
  int n = 0;
  std::vector<Vec2> dof_coords;
  std::vector<Index> elem_dofs;  // flat, stride local_count()
  std::vector<DofClass> classes;

  int local_count() const { return (order + 1) * (order + 2) / 2; }
  Index size() const { return static_cast<Index>(dof_coords.size()); }
  Index lattice_size() const { return static_cast<Index>(order) * n + 1; }
  std::span<const Index> element(Index e) const {
    const auto nk = static_cast<std::size_t>(local_count());
    return {elem_dofs.data() + static_cast<std::size_t>(e) * nk, nk};
  }
};

DofMap build_dof_map(const TriMesh& mesh, int order);

using Polygon = std::vector<Vec2>;

double polygon_area(const Polygon& poly);

/// A straight piece of a control-volume boundary. Interior segments separate
/// the pieces of two local dofs of one element and the normal points from
/// local[0] towards local[1]. Boundary segments lie on the domain boundary,
/// carry only local[0]/dof[0] and an outward normal.
struct CvSegment {
  Vec2 a, b;
  Vec2 normal;
  double length = 0.0;
  Index element = -1;
  std::array<int, 2> local{-1, -1};
  std::array<Index, 2> dof{-1, -1};
  std::optional<Side> boundary;
};

/// Part of an element edge that bounds the piece of one local dof.
struct EdgePiece {
  Vec2 a, b;
  int edge = 0;
  int local = 0;
};

struct SegmentRef {
  Index segment;
  double sign;  ///< +1 when the stored normal points out of the control volume
};

struct DualMesh {
  int order = 1;
  int local_count = 3;

  /// pieces[e * N_k + xi]: polygons whose union is t_xi on element e.
  std::vector<std::vector<Polygon>> pieces;
  std::vector<double> piece_area;

  /// Element-interior segments, contiguous per element (segments_per_element()).
  std::vector<CvSegment> segments;
  /// Segments on the domain boundary.
  std::vector<CvSegment> boundary_segments;
  /// Element edge pieces, contiguous per element (edge_pieces_per_element()).
  std::vector<EdgePiece> edge_pieces;

  std::vector<std::vector<SegmentRef>> cv_segments;        // interior segments of dC^z
  std::vector<std::vector<Index>> cv_boundary_segments;    // boundary segments of dC^z
  std::vector<std::vector<std::pair<Index, int>>> cv_pieces;  // (element, local)
  std::vector<double> cv_area;

  int segments_per_element() const { return order == 1 ? 3 : 12; }
  int edge_pieces_per_element() const { return order == 1 ? 6 : 9; }
  std::span<const CvSegment> element_segments(Index e) const {
    const auto s = static_cast<std::size_t>(segments_per_element());
    return {segments.data() + static_cast<std::size_t>(e) * s, s};
  }
  std::span<const EdgePiece> element_edge_pieces(Index e) const {
    const auto s = static_cast<std::size_t>(edge_pieces_per_element());
    return {edge_pieces.data() + static_cast<std::size_t>(e) * s, s};
  }
  Index num_cvs() const { return static_cast<Index>(cv_area.size()); }
};

DualMesh build_dual_mesh(const TriMesh& mesh, const DofMap& dofs);

/// Sub-triangles of an element used by the dual construction, as triples of
/// local dof indices (one triple for k = 1, four for k = 2).
std::span<const std::array<int, 3>> dual_subtriangles(int order);

/// VTK legacy ASCII unstructured grid of the triangulation, with optional
/// per-point (vertex) scalar fields.
void write_vtk(std::ostream& os, const TriMesh& mesh,
               std::span<const std::pair<std::string, std::vector<double>>> point_fields = {});

}  // namespace lcg
