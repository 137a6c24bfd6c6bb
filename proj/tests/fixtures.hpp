#pragma once

#include <random>
#include <vector>

#include "deltashape/complex.hpp"
#include "deltashape/geometry.hpp"
#include "deltashape/triangulate.hpp"

namespace deltashape::testing {

// Pinwheel over a 3x3 grid: center vertex 0, edge midpoints 1/3/5/7
// (N/E/S/W), corners 2/4/6/8 (NE/SE/SW/NW). The four triangles incident to
// the center form its nerve; the four corner triangles sit one adjacency
// step further out. Edge midpoints also touch four triangles, so the
// maximal-nerve tie resolves to the center by the lowest-id rule.
inline Complex grid3x3_complex() {
  const std::vector<Cell> tris = {
      Cell{0, 1, 3}, Cell{0, 3, 5}, Cell{0, 5, 7}, Cell{0, 1, 7},  // around the center
      Cell{1, 2, 3}, Cell{3, 4, 5}, Cell{5, 6, 7}, Cell{1, 7, 8},  // corner triangles
  };
  return build_complex(tris, ComplexKind::Ordered);
}

inline std::vector<Vec2> grid3x3_points() {
  return {
      {1, 1},          // 0 center
      {1, 0}, {2, 0},  // 1 N, 2 NE
      {2, 1}, {2, 2},  // 3 E, 4 SE
      {1, 2}, {0, 2},  // 5 S, 6 SW
      {0, 1}, {0, 0},  // 7 W, 8 NW
  };
}

constexpr VertexId kGridCenter = 0;

// Fan of n triangles around hub vertex 0: triangles {0, i, i+1}.
inline Complex fan_complex(int n) {
  std::vector<Cell> cells;
  for (int i = 1; i <= n; ++i)
    cells.push_back(Cell{0, static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
  return build_complex(cells, ComplexKind::Ordered);
}

inline std::vector<Keypoint> random_keypoints(int count, std::mt19937_64& rng) {
  std::vector<Keypoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = static_cast<double>(rng()) / static_cast<double>(std::mt19937_64::max());
    const double y = static_cast<double>(rng()) / static_cast<double>(std::mt19937_64::max());
    pts.push_back({x * 100.0, y * 100.0, 1.0});
  }
  return pts;
}

// Random ordered complex: up to max_triangles triangles over a small vertex
// pool (non-degenerate triples only), ids starting at `offset`.
inline Complex random_ordered_complex(int max_triangles, std::mt19937_64& rng,
                                      VertexId offset = 0) {
  const int pool = 12;
  std::vector<Cell> cells;
  const int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_triangles));
  for (int t = 0; t < count; ++t) {
    VertexId a = offset + static_cast<VertexId>(rng() % pool);
    VertexId b = offset + static_cast<VertexId>(rng() % pool);
    VertexId c = offset + static_cast<VertexId>(rng() % pool);
    if (a == b || b == c || a == c) {
      --t;
      continue;
    }
    std::vector<VertexId> vs = {a, b, c};
    std::sort(vs.begin(), vs.end());
    cells.push_back(Cell(vs));
  }
  return build_complex(cells, ComplexKind::Ordered);
}

}  // namespace deltashape::testing
