#pragma once

#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "deltashape/complex.hpp"

namespace deltashape {

/// Per-level spoke sets around a nucleus. levels[0] holds the nucleus 0-cell,
/// levels[k] the 2-cells at recursive adjacency distance k. Levels are
/// pairwise disjoint and cover every 2-cell reachable from the nucleus.
struct SpokeDecomposition {
  VertexId nucleus = 0;
  std::vector<std::set<Cell>> levels;

  int max_level() const { return static_cast<int>(levels.size()) - 1; }
};

struct ObjectSpace {
  VertexId nucleus = 0;
  std::set<Cell> cells;
};

/// All 2-cells of K containing p; each is a 1-spoke, p is the nucleus.
std::set<Cell> nerve(const Complex& K, VertexId p);

SpokeDecomposition spoke_decomposition(const Complex& K, VertexId p);

/// levels[k] as a cell set; empty beyond the decomposition depth.
std::set<Cell> spoke_complex(const SpokeDecomposition& dec, int k);

/// A chain A_0..A_k, one cell per level, consecutive members sharing a
/// vertex. Ties break toward the lowest lexicographic vertex list, chosen
/// from level k downward.
std::vector<Cell> spoke_chain(const SpokeDecomposition& dec, int k);

/// The vertex with the most incident 2-cells and its nerve; ties go to the
/// lowest vertex id.
std::pair<VertexId, std::set<Cell>> max_nerve_cluster(const Complex& K);

/// All vertices attaining the maximal nerve cardinality, ascending.
std::vector<VertexId> max_nerve_nuclei(const Complex& K);

ObjectSpace object_space(const Complex& K, VertexId p);

nlohmann::json decomposition_to_json(const SpokeDecomposition& dec);

}  // namespace deltashape
