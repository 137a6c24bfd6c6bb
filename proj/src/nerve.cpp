#include "deltashape/nerve.hpp"

#include <algorithm>
#include <map>

#include "deltashape/errors.hpp"

namespace deltashape {

namespace {

void require_vertex(const Complex& K, VertexId p) {
  if (!K.has_vertex(p)) fail(Errc::Lookup, "vertex " + std::to_string(p) + " not in complex");
}

bool shares_vertex(const Cell& a, const Cell& b) {
  for (VertexId v : a.vertices)
    if (b.has_vertex(v)) return true;
  return false;
}

}  // namespace

std::set<Cell> nerve(const Complex& K, VertexId p) {
  require_vertex(K, p);
  std::set<Cell> out;
  for (const Cell& c : K.cells(2))
    if (c.has_vertex(p)) out.insert(c);
  return out;
}

SpokeDecomposition spoke_decomposition(const Complex& K, VertexId p) {
  require_vertex(K, p);
  SpokeDecomposition dec;
  dec.nucleus = p;
  dec.levels.push_back({Cell{p}});

  std::set<Cell> unassigned = K.cells(2);
  std::set<VertexId> frontier = {p};
  while (!unassigned.empty()) {
    std::set<Cell> level;
    for (const Cell& c : unassigned) {
      for (VertexId v : c.vertices) {
        if (frontier.count(v)) {
          level.insert(c);
          break;
        }
      }
    }
    if (level.empty()) break;
    frontier.clear();
    for (const Cell& c : level) {
      unassigned.erase(c);
      frontier.insert(c.vertices.begin(), c.vertices.end());
    }
    dec.levels.push_back(std::move(level));
  }
  return dec;
}

std::set<Cell> spoke_complex(const SpokeDecomposition& dec, int k) {
  if (k < 0) fail(Errc::Index, "spoke level must be non-negative");
  if (k > dec.max_level()) return {};
  return dec.levels[static_cast<std::size_t>(k)];
}

std::vector<Cell> spoke_chain(const SpokeDecomposition& dec, int k) {
  if (k < 0) fail(Errc::Index, "spoke level must be non-negative");
  if (k > dec.max_level())
    fail(Errc::Chain, "no chain to depth " + std::to_string(k) + "; max level is " +
                          std::to_string(dec.max_level()));
  std::vector<Cell> chain(static_cast<std::size_t>(k) + 1);
  chain[0] = *dec.levels[0].begin();
  if (k == 0) return chain;
  chain[static_cast<std::size_t>(k)] = *dec.levels[static_cast<std::size_t>(k)].begin();
  for (int j = k - 1; j >= 1; --j) {
    const Cell& next = chain[static_cast<std::size_t>(j) + 1];
    bool found = false;
    for (const Cell& c : dec.levels[static_cast<std::size_t>(j)]) {
      if (shares_vertex(c, next)) {
        chain[static_cast<std::size_t>(j)] = c;
        found = true;
        break;
      }
    }
    if (!found) fail(Errc::Chain, "no neighbour in level " + std::to_string(j));
  }
  return chain;
}

std::pair<VertexId, std::set<Cell>> max_nerve_cluster(const Complex& K) {
  if (K.cells(2).empty()) fail(Errc::Emptiness, "complex has no 2-cells");
  std::map<VertexId, int> counts;
  for (const Cell& c : K.cells(2)) {
    std::set<VertexId> distinct(c.vertices.begin(), c.vertices.end());
    for (VertexId v : distinct) counts[v] += 1;
  }
  VertexId best = counts.begin()->first;
  int best_count = counts.begin()->second;
  for (const auto& [v, n] : counts) {
    if (n > best_count) {
      best = v;
      best_count = n;
    }
  }
  return {best, nerve(K, best)};
}

std::vector<VertexId> max_nerve_nuclei(const Complex& K) {
  if (K.cells(2).empty()) fail(Errc::Emptiness, "complex has no 2-cells");
  std::map<VertexId, int> counts;
  for (const Cell& c : K.cells(2)) {
    std::set<VertexId> distinct(c.vertices.begin(), c.vertices.end());
    for (VertexId v : distinct) counts[v] += 1;
  }
  int best = 0;
  for (const auto& [v, n] : counts) best = std::max(best, n);
  std::vector<VertexId> out;
  for (const auto& [v, n] : counts)
    if (n == best) out.push_back(v);
  return out;
}

ObjectSpace object_space(const Complex& K, VertexId p) {
  const SpokeDecomposition dec = spoke_decomposition(K, p);
  ObjectSpace os;
  os.nucleus = p;
  for (const auto& level : dec.levels) os.cells.insert(level.begin(), level.end());
  return os;
}

nlohmann::json decomposition_to_json(const SpokeDecomposition& dec) {
  nlohmann::json j;
  j["nucleus"] = dec.nucleus;
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& level : dec.levels) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& c : level) cells.push_back(c.vertices);
    levels.push_back(std::move(cells));
  }
  j["levels"] = std::move(levels);
  return j;
}

}  // namespace deltashape
