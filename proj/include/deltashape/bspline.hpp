#pragma once

#include <vector>

#include <json.hpp>

#include "deltashape/geometry.hpp"

namespace deltashape {

/// Non-decreasing knot sequence t_0..t_m over [0,1].
struct KnotVector {
  std::vector<double> knots;

  KnotVector() = default;
  explicit KnotVector(std::vector<double> ks);

  int last_index() const { return static_cast<int>(knots.size()) - 1; }
  double front() const { return knots.front(); }
  double back() const { return knots.back(); }
};

/// Clamped-uniform knots: degree+1 repeats at each end, interior knots
/// uniformly spaced. The resulting curve interpolates both endpoints.
KnotVector clamped_uniform_knots(int control_count, int degree);

/// Cox-de Boor basis N_{i,j}(t). 0/0 terms vanish; the last non-empty span is
/// closed on the right so the basis covers t = t_m.
double bspline_basis(int i, int degree, double t, const KnotVector& T);

/// Rational B-spline curve; with all weights equal it reduces to the plain
/// basis-weighted sum of control points.
struct BSplineCurve {
  std::vector<Vec2> control;
  std::vector<double> weights;
  KnotVector knots;
  int degree = 0;
};

/// Curve over clamped-uniform knots. Empty weights mean all-ones.
BSplineCurve make_clamped_curve(std::vector<Vec2> control, int degree,
                                std::vector<double> weights = {});

/// Curve with an explicit knot vector (m = n + degree + 1 enforced).
BSplineCurve make_curve(std::vector<Vec2> control, int degree, KnotVector knots,
                        std::vector<double> weights = {});

Vec2 eval_curve(const BSplineCurve& c, double t);

/// n_samples evaluations at uniformly spaced t in [0,1], endpoints included.
std::vector<Vec2> sample_curve(const BSplineCurve& c, int n_samples);

/// Differentiability class p - k at an interior knot of multiplicity k.
int continuity_class(const BSplineCurve& c, int knot_index);

nlohmann::json curve_to_json(const BSplineCurve& c);
BSplineCurve curve_from_json(const nlohmann::json& j);

}  // namespace deltashape
