#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deltashape/complex.hpp"
#include "deltashape/errors.hpp"
#include "fixtures.hpp"

using namespace deltashape;

namespace {

Complex triangle_complex() { return build_complex({Cell{0, 1, 2}}, ComplexKind::Ordered); }

bool complexes_equal(const Complex& a, const Complex& b) {
  return a.kind == b.kind && a.grades == b.grades && a.face_map == b.face_map;
}

}  // namespace

TEST_CASE("face maps drop the j-th vertex") {
  const Complex cx = triangle_complex();
  CHECK(cx.face(Cell{0, 1, 2}, 0) == Cell{1, 2});
  CHECK(cx.face(Cell{0, 1, 2}, 1) == Cell{0, 2});
  CHECK(cx.face(Cell{0, 1, 2}, 2) == Cell{0, 1});
  CHECK(cx.face(Cell{1, 2}, 0) == Cell{2});
  CHECK(cx.face(Cell{1, 2}, 1) == Cell{1});
}

TEST_CASE("face errors") {
  const Complex cx = triangle_complex();
  CHECK_THROWS_AS(cx.face(Cell{0, 1, 2}, 3), Error);
  CHECK_THROWS_AS(cx.face(Cell{0, 1, 2}, -1), Error);
  CHECK_THROWS_AS(cx.face(Cell{0}, 0), Error);
  CHECK_THROWS_AS(cx.face(Cell{0, 3}, 0), Error);  // not a cell of cx
  try {
    cx.face(Cell{0, 1, 2}, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Index);
  }
  try {
    cx.face(Cell{0}, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Dimension);
  }
}

TEST_CASE("face commutation over random ordered complexes") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 50; ++n) {
    const Complex cx = testing::random_ordered_complex(30, rng);
    for (const Cell& c : cx.cells(2)) {
      for (int j = 1; j <= 2; ++j)
        for (int i = 0; i < j; ++i)
          CHECK(cx.face(cx.face(c, j), i) == cx.face(cx.face(c, i), j - 1));
    }
  }
}

TEST_CASE("build_complex closes a filled triangle") {
  const Complex cx = triangle_complex();
  CHECK(cx.cells(0) == std::set<Cell>{Cell{0}, Cell{1}, Cell{2}});
  CHECK(cx.cells(1) == std::set<Cell>{Cell{0, 1}, Cell{0, 2}, Cell{1, 2}});
  CHECK(cx.cells(2) == std::set<Cell>{Cell{0, 1, 2}});
}

TEST_CASE("build_complex of a single vertex") {
  const Complex cx = build_complex({Cell{5}}, ComplexKind::Simplicial);
  CHECK(cx.cells(0) == std::set<Cell>{Cell{5}});
  CHECK(cx.cells(1).empty());
  CHECK(cx.cells(2).empty());
}

TEST_CASE("build_complex is idempotent") {
  const Complex cx = testing::grid3x3_complex();
  std::vector<Cell> all;
  for (int d = 0; d <= 2; ++d) all.insert(all.end(), cx.cells(d).begin(), cx.cells(d).end());
  const Complex again = build_complex(all, ComplexKind::Ordered);
  CHECK(complexes_equal(cx, again));
}

TEST_CASE("build_complex rejects bad input") {
  CHECK_THROWS_AS(build_complex({}, ComplexKind::Simplicial), Error);
  CHECK_THROWS_AS(build_complex({Cell{2, 1, 0}}, ComplexKind::Simplicial), Error);
  CHECK_THROWS_AS(build_complex({Cell{0, 0, 1}}, ComplexKind::Simplicial), Error);
  // duplicates collapse silently
  const Complex cx = build_complex({Cell{0, 1, 2}, Cell{0, 1, 2}}, ComplexKind::Ordered);
  CHECK(cx.cells(2).size() == 1);
}

TEST_CASE("Delta set with two parallel edges") {
  const Cell e1({0, 1}, 1);
  const Cell e2({0, 1}, 2);
  const Complex cx = build_complex({e1, e2}, ComplexKind::Delta);
  CHECK(cx.cells(0).size() == 2);
  CHECK(cx.cells(1).size() == 2);
  CHECK(is_valid(cx).ok);
  CHECK(cx.face(e1, 0) == Cell{1});
  CHECK(cx.face(e2, 0) == Cell{1});
  CHECK(cx.face(e2, 1) == Cell{0});
}

TEST_CASE("Delta triangle over parallel edges needs explicit faces") {
  const Cell e1({0, 1}, 1);
  const Cell e2({0, 1}, 2);
  CHECK_THROWS_AS(build_complex({e1, e2, Cell{0, 1, 2}}, ComplexKind::Delta), Error);
  // Explicit wiring resolves the ambiguity.
  const Complex cx = build_delta_complex({
      {Cell{0, 1, 2}, {Cell{1, 2}, Cell({0, 2}), e1}},
      {e2, {}},
  });
  CHECK(is_valid(cx).ok);
  CHECK(cx.face(Cell{0, 1, 2}, 2) == e1);
}

TEST_CASE("sew golden case: two triangles at one vertex") {
  // B's vertices a,b,c are 3,4,5; sewing at 2=a.
  const Complex cxA = build_complex({Cell{0, 1, 2}}, ComplexKind::Simplicial);
  const Complex cxB = build_complex({Cell{3, 4, 5}}, ComplexKind::Simplicial);
  const Complex cxC = sew(cxA, cxB, 2, 3);
  CHECK(cxC.cells(0) == std::set<Cell>{Cell{0}, Cell{1}, Cell{2}, Cell{4}, Cell{5}});
  CHECK(cxC.cells(1) == std::set<Cell>{Cell{0, 1}, Cell{0, 2}, Cell{1, 2}, Cell{2, 4}, Cell{2, 5},
                                       Cell{4, 5}});
  CHECK(cxC.cells(2) == std::set<Cell>{Cell{0, 1, 2}, Cell{2, 4, 5}});
  CHECK(is_valid(cxC).ok);
}

TEST_CASE("sew with an isolated vertex is the identity") {
  const Complex cxA = testing::grid3x3_complex();
  const Complex single = build_complex({Cell{99}}, ComplexKind::Ordered);
  const Complex out = sew(cxA, single, 4, 99);
  CHECK(complexes_equal(out, cxA));
}

TEST_CASE("attaching an edge completes the bounded 2-cell") {
  // Attach edge 7-8 to the two-triangle complex, gluing 7 to vertex 1 and
  // then 8 to vertex 4; the edges {1,2},{2,4},{1,4} then bound a new 2-cell.
  const Complex cxA = build_complex({Cell{0, 1, 2}}, ComplexKind::Simplicial);
  const Complex cxB = build_complex({Cell{3, 4, 5}}, ComplexKind::Simplicial);
  const Complex cxC = sew(cxA, cxB, 2, 3);
  const Complex edge = build_complex({Cell{7, 8}}, ComplexKind::Simplicial);
  const Complex step1 = sew(cxC, edge, 1, 7);
  CHECK(step1.contains(Cell{1, 8}));
  CHECK(step1.cells(2).size() == 2);  // no premature completion
  const Complex cxD = identify_vertices(step1, 4, 8);
  CHECK(cxD.contains(Cell{1, 4}));
  CHECK(cxD.contains(Cell{1, 2, 4}));
  CHECK(cxD.cells(2).size() == 3);
  CHECK(is_valid(cxD).ok);
}

TEST_CASE("sew rejects degenerate identifications for simplicial kinds") {
  const Complex cxA = build_complex({Cell{0, 1, 2}}, ComplexKind::Simplicial);
  const Complex cxB = build_complex({Cell{0, 1, 2}}, ComplexKind::Simplicial);
  // Renaming B's 1 to 0 would give B's triangle two equal vertices.
  CHECK_THROWS_AS(sew(cxA, cxB, 0, 1), Error);
  try {
    sew(cxA, cxB, 0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KindViolation);
  }
}

TEST_CASE("sew lookup errors") {
  const Complex cxA = build_complex({Cell{0, 1, 2}}, ComplexKind::Simplicial);
  const Complex cxB = build_complex({Cell{3, 4, 5}}, ComplexKind::Simplicial);
  CHECK_THROWS_AS(sew(cxA, cxB, 9, 3), Error);
  CHECK_THROWS_AS(sew(cxA, cxB, 0, 9), Error);
}

TEST_CASE("sew grade union covers both inputs") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 20; ++n) {
    const Complex cxA = testing::random_ordered_complex(10, rng);
    const Complex cxB = testing::random_ordered_complex(10, rng, 100);
    const VertexId p = *cxA.vertex_set().begin();
    const VertexId q = *cxB.vertex_set().rbegin();
    const Complex out = sew(cxA, cxB, p, q);
    for (int d = 0; d <= 2; ++d) {
      for (const Cell& c : cxA.cells(d)) CHECK(out.contains(c));
      for (Cell c : cxB.cells(d)) {
        for (VertexId& v : c.vertices)
          if (v == q) v = p;
        std::sort(c.vertices.begin(), c.vertices.end());
        CHECK(out.contains(c));
      }
    }
    // Completion invariant: no 3-vertex set has all edges without the 2-cell.
    const std::set<VertexId> vset = out.vertex_set();
    const std::vector<VertexId> verts(vset.begin(), vset.end());
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        for (std::size_t k = j + 1; k < verts.size(); ++k) {
          if (out.contains(Cell{verts[i], verts[j]}) && out.contains(Cell{verts[i], verts[k]}) &&
              out.contains(Cell{verts[j], verts[k]}))
            CHECK(out.contains(Cell{verts[i], verts[j], verts[k]}));
        }
  }
}

TEST_CASE("glued cone is a valid Delta complex") {
  const Complex tri = build_complex({Cell{0, 1, 2}}, ComplexKind::Delta);
  const Complex cone = identify_vertices(tri, 0, 1);
  CHECK(is_valid(cone).ok);
  CHECK(cone.cells(0).size() == 2);
  CHECK(cone.cells(1).size() == 3);  // loop edge plus two parallel slant edges
  CHECK(cone.cells(2).size() == 1);
  const Cell glued = *cone.cells(2).begin();
  CHECK(glued.vertices == std::vector<VertexId>{0, 0, 2});
  // The identification is forbidden for the simplicial kind.
  const Complex simp = build_complex({Cell{0, 1, 2}}, ComplexKind::Simplicial);
  CHECK_THROWS_AS(identify_vertices(simp, 0, 1), Error);
}

TEST_CASE("Delta sew keeps parallel cells distinct") {
  const Complex a = build_complex({Cell({0, 1}, 1), Cell({0, 1}, 2)}, ComplexKind::Delta);
  const Complex b = build_complex({Cell({10, 11}, 1), Cell({10, 11}, 2)}, ComplexKind::Delta);
  const Complex out = sew(a, b, 1, 10);
  CHECK(out.cells(0).size() == 3);  // 0, 1, 11
  CHECK(out.cells(1).size() == 4);  // both parallel pairs survive
  CHECK(is_valid(out).ok);
  // Mixed kinds are rejected.
  const Complex ordered = build_complex({Cell{0, 1}}, ComplexKind::Ordered);
  CHECK_THROWS_AS(sew(a, ordered, 0, 0), Error);
}

TEST_CASE("is_valid flags closure violations") {
  Complex broken;
  broken.kind = ComplexKind::Ordered;
  broken.grades[0] = {Cell{0}, Cell{1}, Cell{2}};
  broken.grades[1] = {Cell{0, 1}, Cell{1, 2}};  // {0,2} missing
  broken.grades[2] = {Cell{0, 1, 2}};
  const ValidityReport report = is_valid(broken);
  CHECK_FALSE(report.ok);
  bool mentions_missing_edge = false;
  for (const std::string& v : report.violations)
    if (v.find("{0,2}") != std::string::npos) mentions_missing_edge = true;
  CHECK(mentions_missing_edge);
}

TEST_CASE("constructor output is always valid") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 25; ++n) CHECK(is_valid(testing::random_ordered_complex(25, rng)).ok);
}

TEST_CASE("complex JSON round trip") {
  const Complex cx = testing::grid3x3_complex();
  const Complex back = complex_from_json(complex_to_json(cx));
  CHECK(complexes_equal(cx, back));

  const Cell e1({0, 1}, 1);
  const Cell e2({0, 1}, 2);
  const Complex delta = build_complex({e1, e2}, ComplexKind::Delta);
  const Complex delta_back = complex_from_json(complex_to_json(delta));
  CHECK(complexes_equal(delta, delta_back));

  const Complex cone = identify_vertices(build_complex({Cell{0, 1, 2}}, ComplexKind::Delta), 0, 1);
  const Complex cone_back = complex_from_json(complex_to_json(cone));
  CHECK(complexes_equal(cone, cone_back));

  // Explicitly wired faces over parallel edges survive the round trip.
  const Complex wired = build_delta_complex({
      {Cell{0, 1, 2}, {Cell{1, 2}, Cell({0, 2}), Cell({0, 1}, 1)}},
      {Cell({0, 1}, 2), {}},
  });
  const Complex wired_back = complex_from_json(complex_to_json(wired));
  CHECK(complexes_equal(wired, wired_back));
  CHECK(wired_back.face(Cell{0, 1, 2}, 2) == Cell({0, 1}, 1));
}
