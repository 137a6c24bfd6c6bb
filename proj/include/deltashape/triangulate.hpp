#pragma once

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "deltashape/bspline.hpp"
#include "deltashape/complex.hpp"
#include "deltashape/geometry.hpp"
#include "deltashape/image.hpp"

namespace deltashape {

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  double score = 0.0;

  Vec2 pos() const { return {x, y}; }
};

/// Undirected edge as an ordered index pair (a < b).
using EdgeKey = std::pair<int, int>;

inline EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

/// Embedded triangulation: vertex coordinates, sorted triangle triples and
/// the edge -> adjacent-triangle map (every edge borders 1 or 2 triangles).
struct Mesh {
  std::vector<Keypoint> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::map<EdgeKey, std::vector<int>> edge_adjacency;
  int duplicates_removed = 0;

  Vec2 point(int i) const { return vertices[static_cast<std::size_t>(i)].pos(); }
  std::vector<Vec2> points() const;
};

/// Per-edge spline companion of a mesh; every base edge carries exactly one
/// curve whose first/last control points are the edge endpoints.
struct CurvedMesh {
  Mesh base;
  std::map<EdgeKey, BSplineCurve> edge_splines;
};

/// Sobel-magnitude local maxima, non-maximum-suppressed within nms_radius,
/// sorted by descending score (ties by y then x), at most max_count returned.
std::vector<Keypoint> detect_keypoints(const GrayImage& img, int max_count,
                                       double nms_radius = 8.0);

/// Delaunay triangulation: no input point lies strictly inside any triangle's
/// circumdisk. Cocircular groups are triangulated as the fan from their
/// lowest-index point, which makes the output unique. Exact duplicate points
/// are removed first (count reported in the mesh).
Mesh delaunay(const std::vector<Keypoint>& points);

/// The triangles of a mesh as an ordered simplicial complex over vertex ids.
Complex mesh_complex(const Mesh& mesh);

/// Projects each edge to a clamped B-spline whose interior control points are
/// the opposite vertices of the adjacent triangles. degree 0 means automatic
/// (2 for boundary edges, 3 for shared edges); weights apply to interior
/// control points when given as a single value, or per point when the length
/// matches an edge's control polygon.
CurvedMesh curvilinear(const Mesh& mesh, const std::vector<double>& weights = {},
                       int degree = 0);

struct ContainmentReport {
  bool contained = true;
  double worst_violation = -std::numeric_limits<double>::infinity();
  EdgeKey worst_edge{-1, -1};
};

/// Checks every sampled spline point against the convex hull of the mesh
/// vertices (tolerance 1e-6 px) and reports the worst signed violation.
ContainmentReport hull_containment(const CurvedMesh& cm, int samples_per_edge);

/// Largest normalized in-circle value over all (triangle, other vertex)
/// pairs; at most ~0 for a Delaunay mesh.
double max_incircle_violation(const Mesh& mesh);

nlohmann::json mesh_to_json(const Mesh& mesh, const CurvedMesh* curved = nullptr);

}  // namespace deltashape
