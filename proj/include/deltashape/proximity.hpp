#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "deltashape/complex.hpp"
#include "deltashape/geometry.hpp"
#include "deltashape/image.hpp"
#include "deltashape/triangulate.hpp"

namespace deltashape {

/// A non-empty set of cells, optionally carrying a geometric realization
/// (a point set in the plane) for distance-based relations.
struct Region {
  std::set<Cell> cells;
  std::vector<Vec2> realization;
};

Region region_from_cells(std::set<Cell> cells);

/// Region over mesh triangles with the vertex coordinates as realization.
Region region_from_mesh(const Mesh& mesh, const std::set<Cell>& cells);

/// A shape: disjoint interior and boundary cell sets, interior non-empty.
struct ShapeRegion {
  std::set<Cell> interior;
  std::set<Cell> boundary;

  std::set<Cell> closure() const;
};

ShapeRegion make_shape(std::set<Cell> interior, std::set<Cell> boundary);

/// Shape whose interior is the set of mesh triangles fully inside `mask`
/// (all corners satisfy it) and whose boundary is the set of triangles
/// touching the interior without lying inside.
ShapeRegion shape_from_mask(const Mesh& mesh, const std::function<bool(Vec2)>& mask);

struct FeatureVector {
  std::vector<double> values;
};

/// Maps cells to fixed-length descriptors; `schema` names the components.
struct FeatureExtractor {
  std::vector<std::string> schema;
  std::function<FeatureVector(const Cell&)> fn;
};

/// Per-cell descriptor (mean intensity, mean gradient magnitude, area,
/// centroid-x, centroid-y), each normalized to [0,1] for the given image.
FeatureExtractor image_features(const GrayImage& img, const Mesh& mesh);

/// Single-component mean-intensity descriptor.
FeatureExtractor intensity_features(const GrayImage& img, const Mesh& mesh);

/// Image-free descriptor from vertex ids; defined on any cell.
FeatureExtractor combinatorial_features();

/// All cells spanned by a region's cells (every non-empty vertex subset).
std::set<Cell> region_closure(const Region& r);

/// Cells common to both closures.
std::set<Cell> intersection_complex(const Region& a, const Region& b);

enum class IntersectionMode { SharedVertex, SharedCell, Geometric };

/// Strong proximity: non-empty intersection. SharedVertex intersects the
/// regions as vertex sets, SharedCell requires a common cell, Geometric a
/// common realization point (within 1e-9).
bool strong_near(const Region& a, const Region& b,
                 IntersectionMode mode = IntersectionMode::SharedVertex);

/// Grade of the intersection complex: the maximal dimension of a common
/// cell (0 shared vertex, 1 shared edge, 2 shared triangle); nullopt when
/// the regions do not intersect.
std::optional<int> graded_strong_near(const Region& a, const Region& b);

/// Lodato proximity: non-empty intersection, or realizations within eps_geo.
bool lodato_near(const Region& a, const Region& b, double eps_geo = 0.0);

/// Descriptive proximity: some pair of closure cells with feature vectors
/// within eps_phi in the infinity norm.
bool descriptive_near(const Region& a, const Region& b, const FeatureExtractor& phi,
                      double eps_phi);

struct TheoremResult {
  std::string name;
  int trials = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

struct TheoremReport {
  std::vector<TheoremResult> results;

  bool all_passed() const;
};

/// Randomized executable checks of the spoke-complex proximity results:
/// interior/nerve strong nearness, graded downward closure, the object-space
/// biconditional, consecutive-level strong nearness, and the implication
/// chain from strong to Lodato and descriptive nearness.
TheoremReport theorem_suite(const Complex& K, int trials, std::uint64_t seed = 0x5eed,
                            const FeatureExtractor* phi = nullptr);

nlohmann::json report_to_json(const TheoremReport& report);

}  // namespace deltashape
