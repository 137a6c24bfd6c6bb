#include "deltashape/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "deltashape/errors.hpp"

namespace deltashape {

namespace {
constexpr double kOrientTol = 1e-12;
constexpr double kIncircleTol = 1e-9;
}  // namespace

double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double det = orient2d(a, b, c);
  const double mag = std::abs((b.x - a.x) * (c.y - a.y)) + std::abs((b.y - a.y) * (c.x - a.x));
  if (std::abs(det) <= kOrientTol * mag) return 0;
  return det > 0 ? 1 : -1;
}

namespace {

// Rows of the translated in-circle matrix for points p in {a,b,c} around d.
struct IncircleRows {
  std::array<std::array<double, 3>, 3> m;
};

IncircleRows incircle_rows(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  IncircleRows r;
  const Vec2 ps[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    const double dx = ps[i].x - d.x;
    const double dy = ps[i].y - d.y;
    r.m[i] = {dx, dy, dx * dx + dy * dy};
  }
  return r;
}

double det3(const IncircleRows& r) {
  const auto& m = r.m;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Sum of absolute values of the six determinant terms.
double det3_magnitude(const IncircleRows& r) {
  const auto& m = r.m;
  return std::abs(m[0][0] * m[1][1] * m[2][2]) + std::abs(m[0][0] * m[1][2] * m[2][1]) +
         std::abs(m[0][1] * m[1][0] * m[2][2]) + std::abs(m[0][1] * m[1][2] * m[2][0]) +
         std::abs(m[0][2] * m[1][0] * m[2][1]) + std::abs(m[0][2] * m[1][1] * m[2][0]);
}

}  // namespace

double incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 d) { return det3(incircle_rows(a, b, c, d)); }

double incircle_normalized(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const IncircleRows r = incircle_rows(a, b, c, d);
  const double mag = det3_magnitude(r);
  if (mag == 0.0) return 0.0;
  return det3(r) / mag;
}

int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const IncircleRows r = incircle_rows(a, b, c, d);
  const double det = det3(r);
  if (std::abs(det) <= kIncircleTol * det3_magnitude(r)) return 0;
  return det > 0 ? 1 : -1;
}

int incircle_sign_perturbed(Vec2 a, Vec2 b, Vec2 c, Vec2 d, int ia, int ib, int ic, int id) {
  const int s = incircle_sign(a, b, c, d);
  if (s != 0) return s;
  // Expanding the lifted 4x4 determinant in the per-point infinitesimals
  // delta_i (delta_0 >> delta_1 >> ...) gives
  //   det = geom - delta_a*O(b,c,d) + delta_b*O(a,c,d)
  //              - delta_c*O(a,b,d) + delta_d*O(a,b,c).
  // With geom == 0 the dominant term is the one of the lowest index.
  struct Term {
    int index;
    double value;
  };
  const Term terms[4] = {
      {ia, -orient2d(b, c, d)},
      {ib, orient2d(a, c, d)},
      {ic, -orient2d(a, b, d)},
      {id, orient2d(a, b, c)},
  };
  const Term* dominant = &terms[0];
  for (const Term& t : terms)
    if (t.index < dominant->index) dominant = &t;
  if (dominant->value > 0) return 1;
  if (dominant->value < 0) return -1;
  // Three of the four points collinear while all cocircular cannot happen for
  // distinct points; fall back to the next dominant term just in case.
  std::array<Term, 4> sorted{terms[0], terms[1], terms[2], terms[3]};
  std::sort(sorted.begin(), sorted.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
  for (const Term& t : sorted)
    if (t.value != 0) return t.value > 0 ? 1 : -1;
  return 0;
}

bool all_collinear(const std::vector<Vec2>& pts) {
  if (pts.size() < 3) return true;
  for (std::size_t i = 2; i < pts.size(); ++i)
    if (orient_sign(pts[0], pts[1], pts[i]) != 0) return false;
  // pts[0] == pts[1] would make the anchor edge degenerate; try another pair.
  if (pts[0] == pts[1]) {
    for (std::size_t i = 2; i < pts.size(); ++i)
      if (!(pts[i] == pts[0])) {
        for (std::size_t j = 2; j < pts.size(); ++j)
          if (orient_sign(pts[0], pts[i], pts[j]) != 0) return false;
        return true;
      }
  }
  return true;
}

std::vector<int> convex_hull(const std::vector<Vec2>& pts, bool keep_collinear) {
  const int n = static_cast<int>(pts.size());
  if (n < 3) fail(Errc::Degeneracy, "convex hull needs at least 3 points");
  if (all_collinear(pts)) fail(Errc::Degeneracy, "all points collinear");
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (pts[i].x != pts[j].x) return pts[i].x < pts[j].x;
    return pts[i].y < pts[j].y;
  });

  // Monotone chain. With keep_collinear we pop only on strictly clockwise
  // turns, so points on hull edges stay in the chain.
  auto build = [&](auto begin, auto end) {
    std::vector<int> chain;
    for (auto it = begin; it != end; ++it) {
      const int i = *it;
      while (chain.size() >= 2) {
        const int s = orient_sign(pts[chain[chain.size() - 2]], pts[chain.back()], pts[i]);
        const bool pop = keep_collinear ? (s < 0) : (s <= 0);
        if (!pop) break;
        chain.pop_back();
      }
      chain.push_back(i);
    }
    return chain;
  };

  std::vector<int> lower = build(order.begin(), order.end());
  std::vector<int> upper = build(order.rbegin(), order.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3) fail(Errc::Degeneracy, "all points collinear");
  return lower;
}

double hull_violation(const std::vector<Vec2>& hull, Vec2 p) {
  double worst = -std::numeric_limits<double>::infinity();
  const std::size_t n = hull.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = hull[i];
    const Vec2 e1 = hull[(i + 1) % n];
    const double len = distance(e0, e1);
    if (len == 0.0) continue;
    // ccw polygon: interior is left of e0->e1, so positive cross means inside.
    const double signed_out = -cross(e1 - e0, p - e0) / len;
    worst = std::max(worst, signed_out);
  }
  return worst;
}

}  // namespace deltashape
