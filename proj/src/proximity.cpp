#include "deltashape/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "deltashape/errors.hpp"
#include "deltashape/nerve.hpp"

namespace deltashape {

Region region_from_cells(std::set<Cell> cells) {
  if (cells.empty()) fail(Errc::Emptiness, "regions must be non-empty");
  Region r;
  r.cells = std::move(cells);
  return r;
}

Region region_from_mesh(const Mesh& mesh, const std::set<Cell>& cells) {
  Region r = region_from_cells(cells);
  std::set<VertexId> verts;
  for (const Cell& c : cells) verts.insert(c.vertices.begin(), c.vertices.end());
  for (VertexId v : verts) {
    if (v < 0 || v >= static_cast<VertexId>(mesh.vertices.size()))
      fail(Errc::Lookup, "cell vertex " + std::to_string(v) + " not in mesh");
    r.realization.push_back(mesh.point(static_cast<int>(v)));
  }
  return r;
}

std::set<Cell> ShapeRegion::closure() const {
  std::set<Cell> out = interior;
  out.insert(boundary.begin(), boundary.end());
  return out;
}

ShapeRegion make_shape(std::set<Cell> interior, std::set<Cell> boundary) {
  if (interior.empty()) fail(Errc::Construction, "shape interior must be non-empty");
  for (const Cell& c : interior)
    if (boundary.count(c))
      fail(Errc::Construction, "interior and boundary overlap at " + to_string(c));
  ShapeRegion s;
  s.interior = std::move(interior);
  s.boundary = std::move(boundary);
  return s;
}

ShapeRegion shape_from_mask(const Mesh& mesh, const std::function<bool(Vec2)>& mask) {
  std::set<Cell> interior;
  std::set<VertexId> interior_verts;
  for (const auto& t : mesh.triangles) {
    if (mask(mesh.point(t[0])) && mask(mesh.point(t[1])) && mask(mesh.point(t[2]))) {
      interior.insert(Cell{static_cast<VertexId>(t[0]), static_cast<VertexId>(t[1]),
                           static_cast<VertexId>(t[2])});
      for (int v : t) interior_verts.insert(v);
    }
  }
  std::set<Cell> boundary;
  for (const auto& t : mesh.triangles) {
    Cell c{static_cast<VertexId>(t[0]), static_cast<VertexId>(t[1]), static_cast<VertexId>(t[2])};
    if (interior.count(c)) continue;
    for (int v : t) {
      if (interior_verts.count(v)) {
        boundary.insert(c);
        break;
      }
    }
  }
  return make_shape(std::move(interior), std::move(boundary));
}

namespace {

std::set<VertexId> region_vertices(const Region& r) {
  std::set<VertexId> out;
  for (const Cell& c : r.cells) out.insert(c.vertices.begin(), c.vertices.end());
  return out;
}

void add_subsets(const std::vector<VertexId>& verts, std::set<Cell>& out) {
  const std::size_t n = verts.size();
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<VertexId> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(verts[i]);
    if (sub.size() <= 3) out.insert(Cell(std::move(sub)));
  }
}

}  // namespace

std::set<Cell> region_closure(const Region& r) {
  std::set<Cell> out;
  for (const Cell& c : r.cells) {
    std::vector<VertexId> distinct(c.vertices.begin(), c.vertices.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    add_subsets(distinct, out);
  }
  return out;
}

std::set<Cell> intersection_complex(const Region& a, const Region& b) {
  const std::set<Cell> ca = region_closure(a);
  const std::set<Cell> cb = region_closure(b);
  std::set<Cell> out;
  std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                        std::inserter(out, out.begin()));
  return out;
}

namespace {

void require_regions(const Region& a, const Region& b) {
  if (a.cells.empty() || b.cells.empty()) fail(Errc::Emptiness, "regions must be non-empty");
}

double min_realization_distance(const Region& a, const Region& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec2& p : a.realization)
    for (const Vec2& q : b.realization) best = std::min(best, distance(p, q));
  return best;
}

}  // namespace

bool strong_near(const Region& a, const Region& b, IntersectionMode mode) {
  require_regions(a, b);
  switch (mode) {
    case IntersectionMode::SharedVertex: {
      const std::set<VertexId> va = region_vertices(a);
      for (VertexId v : region_vertices(b))
        if (va.count(v)) return true;
      return false;
    }
    case IntersectionMode::SharedCell: {
      for (const Cell& c : a.cells)
        if (b.cells.count(c)) return true;
      return false;
    }
    case IntersectionMode::Geometric: {
      if (a.realization.empty() || b.realization.empty())
        fail(Errc::Config, "geometric mode requires realizations");
      return min_realization_distance(a, b) <= 1e-9;
    }
  }
  return false;
}

std::optional<int> graded_strong_near(const Region& a, const Region& b) {
  require_regions(a, b);
  const std::set<Cell> common = intersection_complex(a, b);
  if (common.empty()) return std::nullopt;
  int k = 0;
  for (const Cell& c : common) k = std::max(k, c.dim());
  return k;
}

bool lodato_near(const Region& a, const Region& b, double eps_geo) {
  require_regions(a, b);
  if (strong_near(a, b)) return true;
  if (eps_geo > 0.0) {
    if (a.realization.empty() || b.realization.empty())
      fail(Errc::Config, "eps_geo requires realizations on both regions");
    return min_realization_distance(a, b) <= eps_geo;
  }
  return false;
}

bool descriptive_near(const Region& a, const Region& b, const FeatureExtractor& phi,
                      double eps_phi) {
  require_regions(a, b);
  if (eps_phi < 0.0) fail(Errc::Config, "eps_phi must be non-negative");
  const std::set<Cell> ca = region_closure(a);
  const std::set<Cell> cb = region_closure(b);
  std::vector<FeatureVector> fb;
  fb.reserve(cb.size());
  for (const Cell& c : cb) fb.push_back(phi.fn(c));
  for (const Cell& c : ca) {
    const FeatureVector fa = phi.fn(c);
    for (const FeatureVector& f : fb) {
      double d = 0.0;
      for (std::size_t i = 0; i < fa.values.size(); ++i)
        d = std::max(d, std::abs(fa.values[i] - f.values[i]));
      if (d <= eps_phi) return true;
    }
  }
  return false;
}

namespace {

struct CellGeometry {
  std::vector<Vec2> corners;
};

CellGeometry cell_geometry(const Cell& c, const Mesh& mesh) {
  CellGeometry g;
  for (VertexId v : c.vertices) {
    if (v < 0 || v >= static_cast<VertexId>(mesh.vertices.size()))
      fail(Errc::Extraction, "cell vertex " + std::to_string(v) + " not in mesh");
    g.corners.push_back(mesh.point(static_cast<int>(v)));
  }
  return g;
}

bool point_in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
  const double d1 = cross(b - a, p - a);
  const double d2 = cross(c - b, p - b);
  const double d3 = cross(a - c, p - c);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

// Sample points of the cell's realization: covered pixel centers for
// triangles, a fixed subdivision for edges, the point itself for vertices.
std::vector<Vec2> cell_samples(const CellGeometry& g) {
  if (g.corners.size() == 1) return {g.corners[0]};
  if (g.corners.size() == 2) {
    std::vector<Vec2> out;
    for (int i = 0; i <= 16; ++i) {
      const double t = static_cast<double>(i) / 16.0;
      out.push_back(g.corners[0] + t * (g.corners[1] - g.corners[0]));
    }
    return out;
  }
  const Vec2 a = g.corners[0], b = g.corners[1], c = g.corners[2];
  std::vector<Vec2> out;
  const int x0 = static_cast<int>(std::floor(std::min({a.x, b.x, c.x})));
  const int x1 = static_cast<int>(std::ceil(std::max({a.x, b.x, c.x})));
  const int y0 = static_cast<int>(std::floor(std::min({a.y, b.y, c.y})));
  const int y1 = static_cast<int>(std::ceil(std::max({a.y, b.y, c.y})));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
      if (point_in_triangle(p, a, b, c)) out.push_back(p);
    }
  if (out.empty()) {
    out = {a, b, c, (1.0 / 3.0) * (a + b + c)};
  }
  return out;
}

float sample_pixel(const GrayImage& img, Vec2 p) {
  const int x = static_cast<int>(std::lround(p.x));
  const int y = static_cast<int>(std::lround(p.y));
  if (x < 0 || x >= img.width || y < 0 || y >= img.height)
    fail(Errc::Extraction, "cell extends outside the image");
  return img.at(x, y);
}

}  // namespace

FeatureExtractor image_features(const GrayImage& img, const Mesh& mesh) {
  if (img.empty()) fail(Errc::Domain, "empty image");
  auto grad = std::make_shared<GrayImage>(sobel_magnitude(img));
  float max_grad = 0.0f;
  for (float v : grad->pixels) max_grad = std::max(max_grad, v);
  const double grad_scale = max_grad > 0.0f ? 1.0 / max_grad : 0.0;
  const double inv_area = 1.0 / (static_cast<double>(img.width) * img.height);
  const double inv_w = 1.0 / std::max(1, img.width - 1);
  const double inv_h = 1.0 / std::max(1, img.height - 1);

  FeatureExtractor fx;
  fx.schema = {"mean_intensity", "mean_gradient", "area", "centroid_x", "centroid_y"};
  // Copies keep the extractor valid after the image and mesh go away.
  fx.fn = [=](const Cell& c) -> FeatureVector {
    const CellGeometry g = cell_geometry(c, mesh);
    const std::vector<Vec2> samples = cell_samples(g);
    double intensity = 0.0, gradient = 0.0;
    for (const Vec2& p : samples) {
      intensity += sample_pixel(img, p);
      gradient += sample_pixel(*grad, p) * grad_scale;
    }
    intensity /= static_cast<double>(samples.size());
    gradient /= static_cast<double>(samples.size());
    double area = 0.0;
    if (g.corners.size() == 3)
      area = 0.5 * std::abs(orient2d(g.corners[0], g.corners[1], g.corners[2])) * inv_area;
    Vec2 centroid{0.0, 0.0};
    for (const Vec2& p : g.corners) centroid = centroid + p;
    centroid = (1.0 / static_cast<double>(g.corners.size())) * centroid;
    return FeatureVector{{intensity, gradient, area, centroid.x * inv_w, centroid.y * inv_h}};
  };
  return fx;
}

FeatureExtractor intensity_features(const GrayImage& img, const Mesh& mesh) {
  if (img.empty()) fail(Errc::Domain, "empty image");
  FeatureExtractor fx;
  fx.schema = {"mean_intensity"};
  fx.fn = [img, mesh](const Cell& c) -> FeatureVector {
    const CellGeometry g = cell_geometry(c, mesh);
    const std::vector<Vec2> samples = cell_samples(g);
    double intensity = 0.0;
    for (const Vec2& p : samples) intensity += sample_pixel(img, p);
    return FeatureVector{{intensity / static_cast<double>(samples.size())}};
  };
  return fx;
}

FeatureExtractor combinatorial_features() {
  FeatureExtractor fx;
  fx.schema = {"dim", "min_vertex", "max_vertex", "vertex_sum"};
  fx.fn = [](const Cell& c) -> FeatureVector {
    double lo = static_cast<double>(c.vertices.front());
    double hi = lo, sum = 0.0;
    for (VertexId v : c.vertices) {
      lo = std::min(lo, static_cast<double>(v));
      hi = std::max(hi, static_cast<double>(v));
      sum += static_cast<double>(v);
    }
    return FeatureVector{{static_cast<double>(c.dim()), lo, hi, sum}};
  };
  return fx;
}

bool TheoremReport::all_passed() const {
  for (const TheoremResult& r : results)
    if (!r.passed()) return false;
  return true;
}

namespace {

Region level_region(const SpokeDecomposition& dec, int k) {
  return region_from_cells(dec.levels[static_cast<std::size_t>(k)]);
}

}  // namespace

TheoremReport theorem_suite(const Complex& K, int trials, std::uint64_t seed,
                            const FeatureExtractor* phi) {
  if (trials < 1) fail(Errc::Config, "trials must be at least 1");
  const FeatureExtractor default_phi = combinatorial_features();
  if (!phi) phi = &default_phi;
  constexpr double kEpsPhi = 1e-9;

  std::mt19937_64 rng(seed);
  const std::vector<Cell> all_triangles(K.cells(2).begin(), K.cells(2).end());
  std::vector<VertexId> nuclei;
  for (VertexId v : K.vertex_set())
    if (!nerve(K, v).empty()) nuclei.push_back(v);

  auto pick_nucleus = [&]() -> VertexId { return nuclei[rng() % nuclei.size()]; };
  auto random_triangle_subset = [&]() -> std::set<Cell> {
    std::set<Cell> out;
    for (const Cell& c : all_triangles)
      if (rng() & 1) out.insert(c);
    if (out.empty() && !all_triangles.empty()) out.insert(all_triangles[rng() % all_triangles.size()]);
    return out;
  };

  TheoremResult interior_nerve{"interior_nerve_strong", 0, {}};
  TheoremResult graded_down{"graded_downward_closure", 0, {}};
  TheoremResult biconditional{"object_space_biconditional", 0, {}};
  TheoremResult consecutive{"consecutive_spoke_nearness", 0, {}};
  TheoremResult implies_lodato{"strong_implies_lodato", 0, {}};
  TheoremResult implies_descriptive{"strong_implies_descriptive", 0, {}};

  for (int trial = 0; trial < trials; ++trial) {
    // Interior of a random shape containing the nucleus is strongly near the
    // nerve at that nucleus.
    interior_nerve.trials++;
    if (!nuclei.empty()) {
      const VertexId p = pick_nucleus();
      const std::set<Cell> subset = random_triangle_subset();
      const Region interior = region_from_cells(subset);
      bool contains_p = false;
      for (const Cell& c : subset)
        if (c.has_vertex(p)) contains_p = true;
      if (contains_p && !strong_near(interior, region_from_cells(nerve(K, p))))
        interior_nerve.failures.push_back("nucleus " + std::to_string(p) +
                                          " inside shape but interior not near nerve");
    }

    // k-strong nearness implies j-strong nearness for every j below k.
    graded_down.trials++;
    if (!all_triangles.empty()) {
      const Region a = region_from_cells(random_triangle_subset());
      const Region b = region_from_cells(random_triangle_subset());
      const std::optional<int> k = graded_strong_near(a, b);
      if (k && *k >= 1) {
        const std::set<Cell> common = intersection_complex(a, b);
        for (int j = 0; j < *k; ++j) {
          bool found = false;
          for (const Cell& c : common)
            if (c.dim() == j) found = true;
          if (!found)
            graded_down.failures.push_back("grade " + std::to_string(*k) +
                                           " intersection lacks a " + std::to_string(j) + "-cell");
        }
      }
    }

    // Object spaces are strongly near iff some pair of their spoke complexes is.
    biconditional.trials++;
    if (nuclei.size() >= 2) {
      const VertexId p = pick_nucleus();
      VertexId q = pick_nucleus();
      for (int retry = 0; retry < 32 && q == p; ++retry) q = pick_nucleus();
      if (q != p) {
        const SpokeDecomposition dp = spoke_decomposition(K, p);
        const SpokeDecomposition dq = spoke_decomposition(K, q);
        const Region op = region_from_cells(object_space(K, p).cells);
        const Region oq = region_from_cells(object_space(K, q).cells);
        const bool lhs = strong_near(op, oq);
        bool rhs = false;
        for (int k = 1; k <= dp.max_level() && !rhs; ++k)
          for (int l = 1; l <= dq.max_level() && !rhs; ++l)
            rhs = strong_near(level_region(dp, k), level_region(dq, l));
        if (lhs != rhs)
          biconditional.failures.push_back(
              "nuclei " + std::to_string(p) + "," + std::to_string(q) + ": object spaces " +
              (lhs ? "near" : "apart") + " but spoke complexes " + (rhs ? "near" : "apart"));
      }
    }

    // Consecutive spoke complexes are strongly near, and strong nearness
    // implies Lodato and descriptive nearness.
    consecutive.trials++;
    implies_lodato.trials++;
    implies_descriptive.trials++;
    if (!nuclei.empty()) {
      const VertexId p = pick_nucleus();
      const SpokeDecomposition dec = spoke_decomposition(K, p);
      const int top = dec.max_level();
      for (int j = 1; j < top; ++j) {
        if (!strong_near(level_region(dec, j + 1), level_region(dec, j)))
          consecutive.failures.push_back("levels " + std::to_string(j + 1) + "," +
                                         std::to_string(j) + " at nucleus " + std::to_string(p));
        if (!strong_near(level_region(dec, j), level_region(dec, j - 1)))
          consecutive.failures.push_back("levels " + std::to_string(j) + "," +
                                         std::to_string(j - 1) + " at nucleus " + std::to_string(p));
      }
      for (int j = 0; j < top; ++j) {
        const Region hi = level_region(dec, j + 1);
        const Region lo = level_region(dec, j);
        if (strong_near(hi, lo)) {
          if (!lodato_near(hi, lo))
            implies_lodato.failures.push_back("levels " + std::to_string(j + 1) + "," +
                                              std::to_string(j) + " at nucleus " +
                                              std::to_string(p));
          if (!descriptive_near(hi, lo, *phi, kEpsPhi))
            implies_descriptive.failures.push_back("levels " + std::to_string(j + 1) + "," +
                                                   std::to_string(j) + " at nucleus " +
                                                   std::to_string(p));
        }
      }
    }
  }

  TheoremReport report;
  report.results = {interior_nerve, graded_down,    biconditional,
                    consecutive,    implies_lodato, implies_descriptive};
  return report;
}

nlohmann::json report_to_json(const TheoremReport& report) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TheoremResult& r : report.results) {
    nlohmann::json entry;
    entry["theorem"] = r.name;
    entry["trials"] = r.trials;
    entry["failures"] = r.failures;
    arr.push_back(std::move(entry));
  }
  return arr;
}

}  // namespace deltashape
