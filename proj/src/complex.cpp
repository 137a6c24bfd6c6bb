#include "deltashape/complex.hpp"

#include <algorithm>
#include <sstream>

#include "deltashape/errors.hpp"

namespace deltashape {

std::string to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::Simplicial: return "simplicial";
    case ComplexKind::Ordered: return "ordered";
    case ComplexKind::Delta: return "delta";
  }
  return "?";
}

ComplexKind complex_kind_from_string(const std::string& s) {
  if (s == "simplicial") return ComplexKind::Simplicial;
  if (s == "ordered") return ComplexKind::Ordered;
  if (s == "delta") return ComplexKind::Delta;
  fail(Errc::Construction, "unknown complex kind: " + s);
}

bool Cell::has_vertex(VertexId v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

Cell Cell::vertex_face(int j) const {
  if (j < 0 || j > dim()) fail(Errc::Index, "face index out of range");
  if (dim() < 1) fail(Errc::Dimension, "0-cells have no faces");
  std::vector<VertexId> vs = vertices;
  vs.erase(vs.begin() + j);
  return Cell(std::move(vs));
}

std::string to_string(const Cell& c) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (i) os << ',';
    os << c.vertices[i];
  }
  os << '}';
  if (c.tag != 0) os << '#' << c.tag;
  return os.str();
}

const std::set<Cell>& Complex::cells(int dim) const {
  if (dim < 0 || dim > 2) fail(Errc::Dimension, "dimension must be 0, 1 or 2");
  return grades[static_cast<std::size_t>(dim)];
}

bool Complex::contains(const Cell& c) const {
  if (c.dim() < 0 || c.dim() > 2) return false;
  return grades[static_cast<std::size_t>(c.dim())].count(c) > 0;
}

bool Complex::has_vertex(VertexId v) const { return grades[0].count(Cell{v}) > 0; }

std::set<VertexId> Complex::vertex_set() const {
  std::set<VertexId> out;
  for (const Cell& c : grades[0]) out.insert(c.vertices[0]);
  return out;
}

std::size_t Complex::cell_count() const {
  return grades[0].size() + grades[1].size() + grades[2].size();
}

Cell Complex::face(const Cell& c, int j) const {
  if (c.dim() < 1) fail(Errc::Dimension, "0-cells have no faces");
  if (j < 0 || j > c.dim()) fail(Errc::Index, "face index out of range");
  auto it = face_map.find({c, j});
  if (it == face_map.end()) fail(Errc::Lookup, "cell not in complex: " + to_string(c));
  return it->second;
}

namespace {

void check_vertex_ids(const Cell& c) {
  for (VertexId v : c.vertices)
    if (v < 0) fail(Errc::Construction, "negative vertex id in " + to_string(c));
}

void check_simplicial_cell(const Cell& c) {
  check_vertex_ids(c);
  if (c.tag != 0)
    fail(Errc::Construction, "tags are Delta-only; got " + to_string(c));
  for (int i = 0; i + 1 < static_cast<int>(c.vertices.size()); ++i)
    if (c.vertices[i] >= c.vertices[i + 1])
      fail(Errc::Construction, "vertex list must be strictly increasing: " + to_string(c));
}

// Unique cell of `cx` whose vertex list matches `list`, if any.
// Returns (found, ambiguous).
std::pair<const Cell*, bool> find_by_list(const Complex& cx, const std::vector<VertexId>& list) {
  const Cell* found = nullptr;
  const int d = static_cast<int>(list.size()) - 1;
  if (d < 0 || d > 2) return {nullptr, false};
  for (const Cell& c : cx.grades[static_cast<std::size_t>(d)]) {
    if (c.vertices == list) {
      if (found) return {found, true};
      found = &c;
    }
  }
  return {found, false};
}

void wire_simplicial_faces(Complex& cx) {
  cx.face_map.clear();
  for (int d = 1; d <= 2; ++d)
    for (const Cell& c : cx.grades[static_cast<std::size_t>(d)])
      for (int j = 0; j <= c.dim(); ++j) cx.face_map[{c, j}] = c.vertex_face(j);
}

// Promotes 3-vertex sets with all boundary edges present to 2-cells (the sew
// completion rule), iterated to a fixed point.
void complete_triangles(Complex& cx) {
  // First match in set order, i.e. the lexicographically smallest candidate.
  auto edge_present = [&](VertexId a, VertexId b) -> const Cell* {
    for (const Cell& c : cx.grades[1]) {
      std::vector<VertexId> vs = c.vertices;
      std::sort(vs.begin(), vs.end());
      if (vs == std::vector<VertexId>{a, b}) return &c;
    }
    return nullptr;
  };
  auto triangle_present = [&](VertexId a, VertexId b, VertexId c) {
    for (const Cell& t : cx.grades[2]) {
      std::vector<VertexId> vs = t.vertices;
      std::sort(vs.begin(), vs.end());
      if (vs == std::vector<VertexId>{a, b, c}) return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    const std::set<VertexId> vset = cx.vertex_set();
    const std::vector<VertexId> verts(vset.begin(), vset.end());
    std::vector<std::array<VertexId, 3>> to_add;
    for (const Cell& e : cx.grades[1]) {
      std::vector<VertexId> vs = e.vertices;
      std::sort(vs.begin(), vs.end());
      if (vs[0] == vs[1]) continue;  // glued loop, not promotable
      for (VertexId w : verts) {
        if (w == vs[0] || w == vs[1]) continue;
        std::array<VertexId, 3> tri{vs[0], vs[1], w};
        std::sort(tri.begin(), tri.end());
        if (triangle_present(tri[0], tri[1], tri[2])) continue;
        const Cell* e01 = edge_present(tri[0], tri[1]);
        const Cell* e02 = edge_present(tri[0], tri[2]);
        const Cell* e12 = edge_present(tri[1], tri[2]);
        if (e01 && e02 && e12) to_add.push_back(tri);
      }
    }
    std::sort(to_add.begin(), to_add.end());
    to_add.erase(std::unique(to_add.begin(), to_add.end()), to_add.end());
    for (const auto& tri : to_add) {
      Cell cell({tri[0], tri[1], tri[2]});
      if (cx.contains(cell)) continue;
      cx.grades[2].insert(cell);
      if (cx.kind == ComplexKind::Delta) {
        // d_j drops the j-th vertex; wire to the smallest matching edge.
        for (int j = 0; j <= 2; ++j) {
          const Cell* found = edge_present(cell.vertex_face(j).vertices[0],
                                           cell.vertex_face(j).vertices[1]);
          if (!found)
            fail(Errc::Construction, "completion of " + to_string(cell) + " lacks an edge");
          cx.face_map[{cell, j}] = *found;
        }
      } else {
        for (int j = 0; j <= 2; ++j) cx.face_map[{cell, j}] = cell.vertex_face(j);
      }
      changed = true;
    }
  }
}

Complex build_delta_from_lists(const std::vector<Cell>& cells) {
  Complex cx;
  cx.kind = ComplexKind::Delta;
  for (const Cell& c : cells) {
    check_vertex_ids(c);
    if (c.dim() < 0 || c.dim() > 2) fail(Errc::Construction, "cells must have dimension 0..2");
    cx.grades[static_cast<std::size_t>(c.dim())].insert(c);
  }
  // Close downward, deriving faces by vertex list. A face list matched by
  // several parallel cells cannot be derived.
  for (int d = 2; d >= 1; --d) {
    for (const Cell& c : std::set<Cell>(cx.grades[static_cast<std::size_t>(d)])) {
      for (int j = 0; j <= c.dim(); ++j) {
        const Cell want = c.vertex_face(j);
        auto [found, ambiguous] = find_by_list(cx, want.vertices);
        if (ambiguous)
          fail(Errc::Construction, "Delta face of " + to_string(c) +
                                       " is ambiguous; explicit face assignments required");
        if (!found) {
          cx.grades[static_cast<std::size_t>(want.dim())].insert(want);
          found = &*cx.grades[static_cast<std::size_t>(want.dim())].find(want);
        }
        cx.face_map[{c, j}] = *found;
      }
    }
  }
  return cx;
}

void validate_or_throw(const Complex& cx) {
  const ValidityReport report = is_valid(cx);
  if (!report.ok)
    fail(Errc::Construction, "invalid complex: " + report.violations.front());
}

}  // namespace

Complex build_complex(const std::vector<Cell>& cells, ComplexKind kind) {
  if (cells.empty()) fail(Errc::Construction, "cannot build a complex from no cells");
  if (kind == ComplexKind::Delta) {
    Complex cx = build_delta_from_lists(cells);
    validate_or_throw(cx);
    return cx;
  }
  Complex cx;
  cx.kind = kind;
  for (const Cell& c : cells) {
    check_simplicial_cell(c);
    if (c.dim() < 0 || c.dim() > 2) fail(Errc::Construction, "cells must have dimension 0..2");
    cx.grades[static_cast<std::size_t>(c.dim())].insert(c);
  }
  // Closure: every (j+1)-element subset of a cell is a cell.
  for (const Cell& c : std::set<Cell>(cx.grades[2])) {
    for (int j = 0; j <= 2; ++j) {
      cx.grades[1].insert(c.vertex_face(j));
    }
  }
  for (const Cell& c : std::set<Cell>(cx.grades[1]))
    for (int j = 0; j <= 1; ++j) cx.grades[0].insert(c.vertex_face(j));
  wire_simplicial_faces(cx);
  return cx;
}

Complex build_delta_complex(const std::vector<DeltaCellSpec>& specs) {
  if (specs.empty()) fail(Errc::Construction, "cannot build a complex from no cells");
  Complex cx;
  cx.kind = ComplexKind::Delta;
  // First pass: collect all cells (specs plus any cells referenced as faces).
  for (const DeltaCellSpec& s : specs) {
    check_vertex_ids(s.cell);
    if (s.cell.dim() < 0 || s.cell.dim() > 2)
      fail(Errc::Construction, "cells must have dimension 0..2");
    if (!s.faces.empty() && static_cast<int>(s.faces.size()) != s.cell.dim() + 1)
      fail(Errc::Construction, "cell " + to_string(s.cell) + " needs " +
                                   std::to_string(s.cell.dim() + 1) + " face assignments");
    cx.grades[static_cast<std::size_t>(s.cell.dim())].insert(s.cell);
    for (const Cell& f : s.faces) {
      check_vertex_ids(f);
      cx.grades[static_cast<std::size_t>(f.dim())].insert(f);
    }
  }
  // Second pass: wire explicit faces, then derive the rest by vertex list.
  for (const DeltaCellSpec& s : specs) {
    for (int j = 0; j < static_cast<int>(s.faces.size()); ++j) {
      const Cell& f = s.faces[static_cast<std::size_t>(j)];
      if (f.vertices != s.cell.vertex_face(j).vertices)
        fail(Errc::Construction, "face " + std::to_string(j) + " of " + to_string(s.cell) +
                                     " must drop the " + std::to_string(j) + "-th vertex");
      cx.face_map[{s.cell, j}] = f;
    }
  }
  for (int d = 2; d >= 1; --d) {
    for (const Cell& c : std::set<Cell>(cx.grades[static_cast<std::size_t>(d)])) {
      for (int j = 0; j <= c.dim(); ++j) {
        if (cx.face_map.count({c, j})) continue;
        const Cell want = c.vertex_face(j);
        auto [found, ambiguous] = find_by_list(cx, want.vertices);
        if (ambiguous)
          fail(Errc::Construction, "Delta face of " + to_string(c) +
                                       " is ambiguous; explicit face assignments required");
        if (!found) {
          cx.grades[static_cast<std::size_t>(want.dim())].insert(want);
          found = &*cx.grades[static_cast<std::size_t>(want.dim())].find(want);
        }
        cx.face_map[{c, j}] = *found;
      }
    }
  }
  validate_or_throw(cx);
  return cx;
}

namespace {

Cell rename_cell(const Cell& c, VertexId from, VertexId to, ComplexKind kind) {
  Cell out = c;
  for (VertexId& v : out.vertices)
    if (v == from) v = to;
  if (kind != ComplexKind::Delta) {
    std::sort(out.vertices.begin(), out.vertices.end());
    if (std::adjacent_find(out.vertices.begin(), out.vertices.end()) != out.vertices.end())
      fail(Errc::KindViolation,
           "identifying " + std::to_string(from) + "=" + std::to_string(to) +
               " degenerates cell " + to_string(c));
  }
  return out;
}

Complex merge_renamed(const Complex& base, const Complex& other, VertexId from, VertexId to) {
  Complex out = base;
  if (other.kind != ComplexKind::Delta) {
    // Vertex lists identify simplicial/ordered cells, so the grade-wise union
    // collapses duplicates; face maps are recomputed by the caller.
    for (int d = 0; d <= 2; ++d)
      for (const Cell& c : other.grades[static_cast<std::size_t>(d)])
        out.grades[static_cast<std::size_t>(d)].insert(rename_cell(c, from, to, other.kind));
    return out;
  }
  // Delta cells are physical: the rename must stay injective above grade 0,
  // so colliding (list, tag) pairs get a fresh tag. Only vertex cells merge
  // (that is the identification itself).
  std::map<Cell, Cell> cell_map;
  for (int d = 0; d <= 2; ++d) {
    auto& grade = out.grades[static_cast<std::size_t>(d)];
    for (const Cell& c : other.grades[static_cast<std::size_t>(d)]) {
      Cell renamed = rename_cell(c, from, to, other.kind);
      if (d > 0) {
        while (grade.count(renamed)) renamed.tag += 1;
      }
      grade.insert(renamed);
      cell_map.emplace(c, std::move(renamed));
    }
  }
  for (const auto& [key, value] : other.face_map) {
    const auto cell_it = cell_map.find(key.first);
    const auto face_it = cell_map.find(value);
    if (cell_it == cell_map.end() || face_it == cell_map.end())
      fail(Errc::Construction, "face map references a cell outside the complex");
    out.face_map[{cell_it->second, key.second}] = face_it->second;
  }
  return out;
}

}  // namespace

Complex sew(const Complex& cxA, const Complex& cxB, VertexId p, VertexId q) {
  if (cxA.kind != cxB.kind) fail(Errc::Construction, "sew requires complexes of the same kind");
  if (!cxA.has_vertex(p)) fail(Errc::Lookup, "vertex " + std::to_string(p) + " not in first complex");
  if (!cxB.has_vertex(q)) fail(Errc::Lookup, "vertex " + std::to_string(q) + " not in second complex");
  Complex out = merge_renamed(cxA, cxB, q, p);
  if (out.kind != ComplexKind::Delta) wire_simplicial_faces(out);
  complete_triangles(out);
  validate_or_throw(out);
  return out;
}

Complex identify_vertices(const Complex& cx, VertexId keep, VertexId merge) {
  if (!cx.has_vertex(keep)) fail(Errc::Lookup, "vertex " + std::to_string(keep) + " not in complex");
  if (!cx.has_vertex(merge)) fail(Errc::Lookup, "vertex " + std::to_string(merge) + " not in complex");
  if (keep == merge) return cx;
  Complex empty;
  empty.kind = cx.kind;
  Complex out = merge_renamed(empty, cx, merge, keep);
  if (out.kind != ComplexKind::Delta) wire_simplicial_faces(out);
  complete_triangles(out);
  validate_or_throw(out);
  return out;
}

ValidityReport is_valid(const Complex& cx) {
  ValidityReport report;
  auto violation = [&](const std::string& what) {
    report.ok = false;
    report.violations.push_back(what);
  };

  for (int d = 0; d <= 2; ++d) {
    for (const Cell& c : cx.grades[static_cast<std::size_t>(d)]) {
      if (c.dim() != d) violation("cell " + to_string(c) + " stored in grade " + std::to_string(d));
      for (VertexId v : c.vertices)
        if (v < 0) violation("negative vertex id in " + to_string(c));
      if (cx.kind != ComplexKind::Delta) {
        if (c.tag != 0) violation("non-zero tag " + to_string(c) + " in a non-Delta complex");
        for (int i = 0; i + 1 < static_cast<int>(c.vertices.size()); ++i)
          if (c.vertices[i] >= c.vertices[i + 1])
            violation("vertex list not strictly increasing: " + to_string(c));
      }
    }
  }

  // Closure (simplicial/ordered): every subset face is a cell.
  if (cx.kind != ComplexKind::Delta) {
    for (int d = 1; d <= 2; ++d) {
      for (const Cell& c : cx.grades[static_cast<std::size_t>(d)]) {
        for (int j = 0; j <= c.dim(); ++j) {
          const Cell f = c.vertex_face(j);
          if (!cx.contains(f))
            violation("closure violated: " + to_string(f) + " missing (face of " + to_string(c) + ")");
        }
      }
    }
  }

  // Face maps: present, in-complex, list-consistent.
  for (int d = 1; d <= 2; ++d) {
    for (const Cell& c : cx.grades[static_cast<std::size_t>(d)]) {
      for (int j = 0; j <= c.dim(); ++j) {
        auto it = cx.face_map.find({c, j});
        if (it == cx.face_map.end()) {
          violation("missing face map d_" + std::to_string(j) + " for " + to_string(c));
          continue;
        }
        const Cell& f = it->second;
        if (!cx.contains(f))
          violation("face " + to_string(f) + " of " + to_string(c) + " not in complex");
        if (f.vertices != c.vertex_face(j).vertices)
          violation("face map d_" + std::to_string(j) + " of " + to_string(c) +
                    " does not drop the " + std::to_string(j) + "-th vertex");
      }
    }
  }

  // Commutation d_i d_j = d_{j-1} d_i for i < j over all 2-cells.
  for (const Cell& c : cx.grades[2]) {
    for (int j = 1; j <= 2; ++j) {
      for (int i = 0; i < j; ++i) {
        auto outer = cx.face_map.find({c, j});
        auto inner = cx.face_map.find({c, i});
        if (outer == cx.face_map.end() || inner == cx.face_map.end()) continue;
        auto lhs = cx.face_map.find({outer->second, i});
        auto rhs = cx.face_map.find({inner->second, j - 1});
        if (lhs == cx.face_map.end() || rhs == cx.face_map.end()) continue;
        if (!(lhs->second == rhs->second))
          violation("commutation d_" + std::to_string(i) + " d_" + std::to_string(j) +
                    " != d_" + std::to_string(j - 1) + " d_" + std::to_string(i) + " on " +
                    to_string(c));
      }
    }
  }

  // Vertex ids are unique per complex: two grade-0 cells may not share an id.
  {
    std::set<VertexId> seen;
    for (const Cell& c : cx.grades[0]) {
      if (!seen.insert(c.vertices[0]).second)
        violation("duplicate vertex id " + std::to_string(c.vertices[0]));
    }
  }

  return report;
}

nlohmann::json complex_to_json(const Complex& cx) {
  nlohmann::json j;
  j["kind"] = to_string(cx.kind);
  const char* names[3] = {"X0", "X1", "X2"};
  bool any_tag = false;
  for (int d = 0; d <= 2; ++d) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Cell& c : cx.grades[static_cast<std::size_t>(d)]) {
      arr.push_back(c.vertices);
      if (c.tag != 0) any_tag = true;
    }
    j[names[d]] = std::move(arr);
  }
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& [key, value] : cx.face_map) {
    nlohmann::json entry;
    entry["cell"] = key.first.vertices;
    entry["j"] = key.second;
    entry["face"] = value.vertices;
    if (cx.kind == ComplexKind::Delta) {
      entry["cell_tag"] = key.first.tag;
      entry["face_tag"] = value.tag;
    }
    faces.push_back(std::move(entry));
  }
  j["faces"] = std::move(faces);
  if (cx.kind == ComplexKind::Delta || any_tag) {
    nlohmann::json tags;
    for (int d = 0; d <= 2; ++d) {
      nlohmann::json arr = nlohmann::json::array();
      for (const Cell& c : cx.grades[static_cast<std::size_t>(d)]) arr.push_back(c.tag);
      tags[names[d]] = std::move(arr);
    }
    j["tags"] = std::move(tags);
  }
  return j;
}

Complex complex_from_json(const nlohmann::json& j) {
  Complex cx;
  try {
    cx.kind = complex_kind_from_string(j.at("kind").get<std::string>());
    const char* names[3] = {"X0", "X1", "X2"};
    for (int d = 0; d <= 2; ++d) {
      const nlohmann::json& arr = j.at(names[d]);
      const nlohmann::json* tags = nullptr;
      if (j.contains("tags") && j["tags"].contains(names[d])) tags = &j["tags"][names[d]];
      for (std::size_t i = 0; i < arr.size(); ++i) {
        Cell c(arr[i].get<std::vector<VertexId>>(),
               tags ? (*tags)[i].get<int>() : 0);
        cx.grades[static_cast<std::size_t>(d)].insert(std::move(c));
      }
    }
    for (const nlohmann::json& entry : j.at("faces")) {
      Cell cell(entry.at("cell").get<std::vector<VertexId>>(),
                entry.contains("cell_tag") ? entry["cell_tag"].get<int>() : 0);
      Cell face(entry.at("face").get<std::vector<VertexId>>(),
                entry.contains("face_tag") ? entry["face_tag"].get<int>() : 0);
      cx.face_map[{std::move(cell), entry.at("j").get<int>()}] = std::move(face);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::Construction, std::string("malformed complex JSON: ") + e.what());
  }
  validate_or_throw(cx);
  return cx;
}

}  // namespace deltashape
