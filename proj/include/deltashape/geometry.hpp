#pragma once

#include <cmath>
#include <vector>

namespace deltashape {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Twice the signed area of triangle (a,b,c); positive when counterclockwise.
double orient2d(Vec2 a, Vec2 b, Vec2 c);

/// Sign of orient2d with a relative tolerance: +1 ccw, -1 cw, 0 collinear.
int orient_sign(Vec2 a, Vec2 b, Vec2 c);

/// In-circle determinant. Positive iff d lies strictly inside the circumcircle
/// of the counterclockwise triangle (a,b,c).
double incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// In-circle determinant divided by the magnitude of its terms; the scale-free
/// quantity that tolerances apply to.
double incircle_normalized(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Sign of the in-circle determinant with a relative tolerance.
int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Tie-free in-circle test. Exact cocircularity is resolved by symbolically
/// lowering each lifted point by an infinitesimal that decreases with its
/// index, which makes the triangulation of every cocircular ring the fan from
/// its lowest-index point. Never returns 0 for four distinct points.
int incircle_sign_perturbed(Vec2 a, Vec2 b, Vec2 c, Vec2 d, int ia, int ib, int ic, int id);

bool all_collinear(const std::vector<Vec2>& pts);

/// Indices of the convex hull in counterclockwise order. With keep_collinear,
/// points lying on hull edges are kept as hull vertices.
std::vector<int> convex_hull(const std::vector<Vec2>& pts, bool keep_collinear = false);

/// Signed distance of p from the ccw convex polygon `hull`, measured against
/// supporting half-planes: positive outside, negative inside.
double hull_violation(const std::vector<Vec2>& hull, Vec2 p);

}  // namespace deltashape
