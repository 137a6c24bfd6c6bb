#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace deltashape {

using VertexId = std::int64_t;

enum class ComplexKind { Simplicial, Ordered, Delta };

std::string to_string(ComplexKind kind);
ComplexKind complex_kind_from_string(const std::string& s);

/// A cell of dimension 0, 1 or 2, identified by its vertex list. Simplicial
/// and ordered complexes keep vertex lists strictly increasing and always use
/// tag 0. Delta complexes may hold several cells over the same vertex list
/// (parallel edges) or cells repeating a vertex (glued cells); the tag
/// distinguishes them.
struct Cell {
  std::vector<VertexId> vertices;
  int tag = 0;

  Cell() = default;
  Cell(std::initializer_list<VertexId> vs, int t = 0) : vertices(vs), tag(t) {}
  explicit Cell(std::vector<VertexId> vs, int t = 0) : vertices(std::move(vs)), tag(t) {}

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  bool has_vertex(VertexId v) const;
  /// Vertex list with position j removed (tag reset to 0).
  Cell vertex_face(int j) const;

  auto operator<=>(const Cell&) const = default;
};

std::string to_string(const Cell& c);

struct ValidityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Graded cell sets X^0, X^1, X^2 with stored face maps. Immutable after
/// construction; build with build_complex / build_delta_complex / sew.
struct Complex {
  ComplexKind kind = ComplexKind::Simplicial;
  std::array<std::set<Cell>, 3> grades;
  std::map<std::pair<Cell, int>, Cell> face_map;

  const std::set<Cell>& cells(int dim) const;
  bool contains(const Cell& c) const;
  bool has_vertex(VertexId v) const;
  std::set<VertexId> vertex_set() const;
  std::size_t cell_count() const;

  /// The j-th face of c via the stored face map.
  Cell face(const Cell& c, int j) const;
};

/// A Delta cell together with its face assignments (faces[j] = d_j image).
/// Leave `faces` empty to derive them by vertex list where unambiguous.
struct DeltaCellSpec {
  Cell cell;
  std::vector<Cell> faces;
};

/// Builds the closure of `cells`: all faces added, face maps populated.
/// For the Delta kind, faces are matched by vertex list and must be
/// unambiguous; use build_delta_complex for explicit wiring.
Complex build_complex(const std::vector<Cell>& cells, ComplexKind kind);

Complex build_delta_complex(const std::vector<DeltaCellSpec>& specs);

/// Glues cxB onto cxA by identifying B's vertex q with A's vertex p, then
/// promotes every 3-vertex set whose three boundary edges are present to a
/// 2-cell, repeating until a fixed point.
Complex sew(const Complex& cxA, const Complex& cxB, VertexId p, VertexId q);

/// Identifies two vertices of one complex (merge is renamed to keep) and
/// applies the same completion rule as sew. Simplicial/ordered complexes
/// reject identifications that would degenerate a cell; Delta complexes glue.
Complex identify_vertices(const Complex& cx, VertexId keep, VertexId merge);

ValidityReport is_valid(const Complex& cx);

nlohmann::json complex_to_json(const Complex& cx);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace deltashape
