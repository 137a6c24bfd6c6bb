#include "deltashape/triangulate.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "deltashape/errors.hpp"

namespace deltashape {

std::vector<Vec2> Mesh::points() const {
  std::vector<Vec2> out;
  out.reserve(vertices.size());
  for (const Keypoint& k : vertices) out.push_back(k.pos());
  return out;
}

std::vector<Keypoint> detect_keypoints(const GrayImage& img, int max_count, double nms_radius) {
  if (img.empty()) fail(Errc::Domain, "empty image");
  if (max_count < 3) fail(Errc::Config, "max_count must be at least 3");
  if (nms_radius <= 0.0) fail(Errc::Config, "nms_radius must be positive");

  const GrayImage mag = sobel_magnitude(img);
  std::vector<Keypoint> candidates;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const float v = mag.at(x, y);
      if (v <= 0.0f) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (mag.at_clamped(x + dx, y + dy) > v) {
            is_max = false;
            break;
          }
        }
      if (is_max)
        candidates.push_back({static_cast<double>(x), static_cast<double>(y),
                              static_cast<double>(v)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Keypoint& a, const Keypoint& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });

  std::vector<Keypoint> accepted;
  for (const Keypoint& c : candidates) {
    if (static_cast<int>(accepted.size()) >= max_count) break;
    bool suppressed = false;
    for (const Keypoint& a : accepted) {
      if (distance(a.pos(), c.pos()) < nms_radius) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) accepted.push_back(c);
  }
  if (accepted.size() < 3)
    fail(Errc::InsufficientKeypoints,
         "found " + std::to_string(accepted.size()) + " keypoints; need at least 3");
  return accepted;
}

namespace {

void index_mesh_edges(Mesh& mesh) {
  mesh.edge_adjacency.clear();
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    mesh.edge_adjacency[edge_key(tri[0], tri[1])].push_back(static_cast<int>(t));
    mesh.edge_adjacency[edge_key(tri[0], tri[2])].push_back(static_cast<int>(t));
    mesh.edge_adjacency[edge_key(tri[1], tri[2])].push_back(static_cast<int>(t));
  }
}

}  // namespace

Mesh delaunay(const std::vector<Keypoint>& points) {
  Mesh mesh;
  std::set<std::pair<double, double>> seen;
  for (const Keypoint& k : points) {
    if (seen.insert({k.x, k.y}).second)
      mesh.vertices.push_back(k);
    else
      mesh.duplicates_removed += 1;
  }
  const int n = static_cast<int>(mesh.vertices.size());
  if (n < 3) fail(Errc::Degeneracy, "need at least 3 distinct points");
  const std::vector<Vec2> pts = mesh.points();
  if (all_collinear(pts)) fail(Errc::Degeneracy, "all points collinear");

  // Frontier growth: starting from the hull edges, find for each directed
  // edge (a,b) the point on its left whose circumcircle is empty of other
  // left points. The perturbed in-circle test makes the choice unique, so the
  // triangulation is the fan-canonical Delaunay mesh.
  const std::vector<int> hull = convex_hull(pts, /*keep_collinear=*/true);
  std::deque<std::pair<int, int>> frontier;
  std::set<std::pair<int, int>> enqueued;
  auto push = [&](int a, int b) {
    if (enqueued.insert({a, b}).second) frontier.push_back({a, b});
  };
  for (std::size_t i = 0; i < hull.size(); ++i)
    push(hull[i], hull[(i + 1) % hull.size()]);

  std::set<std::array<int, 3>> tris;
  while (!frontier.empty()) {
    const auto [a, b] = frontier.front();
    frontier.pop_front();
    int best = -1;
    for (int c = 0; c < n; ++c) {
      if (c == a || c == b) continue;
      if (orient_sign(pts[a], pts[b], pts[c]) <= 0) continue;
      if (best == -1 ||
          incircle_sign_perturbed(pts[a], pts[b], pts[best], pts[c], a, b, best, c) > 0)
        best = c;
    }
    if (best == -1) continue;  // outward-facing edge
    std::array<int, 3> tri{a, b, best};
    std::sort(tri.begin(), tri.end());
    if (tris.insert(tri).second) {
      push(best, b);
      push(a, best);
    }
  }

  mesh.triangles.assign(tris.begin(), tris.end());
  index_mesh_edges(mesh);
  for (const auto& [e, adj] : mesh.edge_adjacency) {
    if (adj.size() > 2)
      fail(Errc::Degeneracy, "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                 " borders " + std::to_string(adj.size()) + " triangles");
  }
  return mesh;
}

Complex mesh_complex(const Mesh& mesh) {
  std::vector<Cell> cells;
  cells.reserve(mesh.triangles.size() + mesh.vertices.size());
  for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v)
    cells.push_back(Cell{static_cast<VertexId>(v)});
  for (const auto& t : mesh.triangles)
    cells.push_back(Cell{static_cast<VertexId>(t[0]), static_cast<VertexId>(t[1]),
                         static_cast<VertexId>(t[2])});
  return build_complex(cells, ComplexKind::Ordered);
}

CurvedMesh curvilinear(const Mesh& mesh, const std::vector<double>& weights, int degree) {
  if (degree != 0 && degree < 2)
    fail(Errc::Config, "spline degree must be at least 2 (0 selects per-edge default)");
  CurvedMesh cm;
  cm.base = mesh;
  for (const auto& [e, adj] : mesh.edge_adjacency) {
    // Control polygon: endpoint, opposite vertices of the adjacent triangles
    // (lowest vertex id first), endpoint.
    std::vector<int> interior;
    for (int t : adj) {
      for (int v : mesh.triangles[static_cast<std::size_t>(t)])
        if (v != e.first && v != e.second) interior.push_back(v);
    }
    std::sort(interior.begin(), interior.end());
    std::vector<Vec2> control;
    control.push_back(mesh.point(e.first));
    for (int v : interior) control.push_back(mesh.point(v));
    control.push_back(mesh.point(e.second));

    const int max_degree = static_cast<int>(control.size()) - 1;
    const int eff_degree = degree == 0 ? max_degree : std::min(degree, max_degree);

    std::vector<double> w;
    if (weights.empty()) {
      // all ones
    } else if (weights.size() == 1) {
      w.assign(control.size(), 1.0);
      for (std::size_t i = 1; i + 1 < control.size(); ++i) w[i] = weights[0];
    } else if (weights.size() == control.size()) {
      w = weights;
    } else {
      fail(Errc::Construction,
           "weight vector length " + std::to_string(weights.size()) + " does not match " +
               std::to_string(control.size()) + " control points on edge " +
               std::to_string(e.first) + "-" + std::to_string(e.second));
    }
    cm.edge_splines.emplace(e, make_clamped_curve(std::move(control), eff_degree, std::move(w)));
  }
  return cm;
}

ContainmentReport hull_containment(const CurvedMesh& cm, int samples_per_edge) {
  if (samples_per_edge < 2) fail(Errc::Config, "need at least 2 samples per edge");
  const std::vector<Vec2> pts = cm.base.points();
  const std::vector<int> hull_idx = convex_hull(pts);
  std::vector<Vec2> hull;
  hull.reserve(hull_idx.size());
  for (int i : hull_idx) hull.push_back(pts[static_cast<std::size_t>(i)]);

  ContainmentReport report;
  for (const auto& [e, curve] : cm.edge_splines) {
    for (const Vec2& s : sample_curve(curve, samples_per_edge)) {
      const double v = hull_violation(hull, s);
      if (v > report.worst_violation) {
        report.worst_violation = v;
        report.worst_edge = e;
      }
    }
  }
  report.contained = report.worst_violation <= 1e-6;
  return report;
}

double max_incircle_violation(const Mesh& mesh) {
  const std::vector<Vec2> pts = mesh.points();
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles) {
    Vec2 a = pts[static_cast<std::size_t>(t[0])], b = pts[static_cast<std::size_t>(t[1])],
         c = pts[static_cast<std::size_t>(t[2])];
    if (orient_sign(a, b, c) < 0) std::swap(b, c);
    for (int v = 0; v < static_cast<int>(pts.size()); ++v) {
      if (v == t[0] || v == t[1] || v == t[2]) continue;
      worst = std::max(worst, incircle_normalized(a, b, c, pts[static_cast<std::size_t>(v)]));
    }
  }
  return worst;
}

nlohmann::json mesh_to_json(const Mesh& mesh, const CurvedMesh* curved) {
  nlohmann::json j;
  nlohmann::json verts = nlohmann::json::array();
  for (const Keypoint& k : mesh.vertices) verts.push_back({k.x, k.y, k.score});
  j["vertices"] = std::move(verts);
  nlohmann::json tris = nlohmann::json::array();
  for (const auto& t : mesh.triangles) tris.push_back({t[0], t[1], t[2]});
  j["triangles"] = std::move(tris);
  if (curved) {
    nlohmann::json splines;
    for (const auto& [e, curve] : curved->edge_splines)
      splines[std::to_string(e.first) + "-" + std::to_string(e.second)] = curve_to_json(curve);
    j["splines"] = std::move(splines);
  }
  return j;
}

}  // namespace deltashape
