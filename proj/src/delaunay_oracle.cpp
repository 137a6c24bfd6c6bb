#include "deltashape/delaunay_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "deltashape/errors.hpp"

namespace deltashape {

namespace {

// Long-double predicates, independent of the double-precision ones the mesh
// builder uses.
int ld_orient(Vec2 a, Vec2 b, Vec2 c) {
  const long double det = (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
                          (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
  const long double mag = std::abs((static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y)) +
                          std::abs((static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x));
  if (std::abs(det) <= 1e-12L * mag) return 0;
  return det > 0 ? 1 : -1;
}

// Positive iff d lies strictly inside the circumcircle of ccw (a,b,c).
int ld_incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  long double m[3][3];
  const Vec2 ps[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    const long double dx = static_cast<long double>(ps[i].x) - d.x;
    const long double dy = static_cast<long double>(ps[i].y) - d.y;
    m[i][0] = dx;
    m[i][1] = dy;
    m[i][2] = dx * dx + dy * dy;
  }
  const long double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                          m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                          m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const long double mag = std::abs(m[0][0] * m[1][1] * m[2][2]) + std::abs(m[0][0] * m[1][2] * m[2][1]) +
                          std::abs(m[0][1] * m[1][0] * m[2][2]) + std::abs(m[0][1] * m[1][2] * m[2][0]) +
                          std::abs(m[0][2] * m[1][0] * m[2][1]) + std::abs(m[0][2] * m[1][1] * m[2][0]);
  if (std::abs(det) <= 1e-9L * mag) return 0;
  return det > 0 ? 1 : -1;
}

// Fan triangulation of a convex cocircular group: triangles (v0, u_i, u_i+1)
// with v0 the lowest index and u_i the remaining points in angular order.
std::set<std::array<int, 3>> fan_triangles(const std::vector<int>& group,
                                           const std::vector<Vec2>& pts) {
  Vec2 centroid{0.0, 0.0};
  for (int i : group) centroid = centroid + pts[static_cast<std::size_t>(i)];
  centroid = (1.0 / static_cast<double>(group.size())) * centroid;
  std::vector<int> ring = group;
  std::sort(ring.begin(), ring.end(), [&](int i, int j) {
    const Vec2 a = pts[static_cast<std::size_t>(i)] - centroid;
    const Vec2 b = pts[static_cast<std::size_t>(j)] - centroid;
    return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
  });
  const auto v0_it = std::min_element(ring.begin(), ring.end());
  std::rotate(ring.begin(), v0_it, ring.end());
  std::set<std::array<int, 3>> out;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
    std::array<int, 3> tri{ring[0], ring[i], ring[i + 1]};
    std::sort(tri.begin(), tri.end());
    out.insert(tri);
  }
  return out;
}

}  // namespace

std::set<std::array<int, 3>> delaunay_bruteforce(const std::vector<Vec2>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) fail(Errc::Degeneracy, "need at least 3 points");
  std::set<std::array<int, 3>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Vec2 a = points[static_cast<std::size_t>(i)];
        Vec2 b = points[static_cast<std::size_t>(j)];
        Vec2 c = points[static_cast<std::size_t>(k)];
        const int o = ld_orient(a, b, c);
        if (o == 0) continue;
        if (o < 0) std::swap(b, c);
        bool empty = true;
        std::vector<int> cocircular;
        for (int l = 0; l < n && empty; ++l) {
          if (l == i || l == j || l == k) continue;
          const int s = ld_incircle(a, b, c, points[static_cast<std::size_t>(l)]);
          if (s > 0) empty = false;
          if (s == 0) cocircular.push_back(l);
        }
        if (!empty) continue;
        if (cocircular.empty()) {
          out.insert({i, j, k});
        } else {
          cocircular.push_back(i);
          cocircular.push_back(j);
          cocircular.push_back(k);
          std::sort(cocircular.begin(), cocircular.end());
          std::array<int, 3> tri{i, j, k};
          const auto fan = fan_triangles(cocircular, points);
          if (fan.count(tri)) out.insert(tri);
        }
      }
    }
  }
  return out;
}

}  // namespace deltashape
