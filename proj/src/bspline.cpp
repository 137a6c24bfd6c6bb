#include "deltashape/bspline.hpp"

#include <algorithm>
#include <cmath>

#include "deltashape/errors.hpp"

namespace deltashape {

KnotVector::KnotVector(std::vector<double> ks) : knots(std::move(ks)) {
  if (knots.size() < 2) fail(Errc::Construction, "knot vector needs at least two knots");
  for (double t : knots)
    if (!(t >= 0.0 && t <= 1.0)) fail(Errc::Construction, "knots must lie in [0,1]");
  if (!std::is_sorted(knots.begin(), knots.end()))
    fail(Errc::Construction, "knot vector must be non-decreasing");
  if (knots.front() == knots.back())
    fail(Errc::Construction, "knot vector spans an empty domain");
}

KnotVector clamped_uniform_knots(int control_count, int degree) {
  if (degree < 1) fail(Errc::Construction, "degree must be at least 1");
  if (control_count < degree + 1)
    fail(Errc::Construction, "need at least degree+1 control points");
  const int interior = control_count - degree - 1;
  std::vector<double> ks;
  ks.reserve(static_cast<std::size_t>(control_count) + static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i <= degree; ++i) ks.push_back(0.0);
  for (int i = 1; i <= interior; ++i)
    ks.push_back(static_cast<double>(i) / static_cast<double>(interior + 1));
  for (int i = 0; i <= degree; ++i) ks.push_back(1.0);
  return KnotVector(std::move(ks));
}

double bspline_basis(int i, int degree, double t, const KnotVector& T) {
  const int m = T.last_index();
  if (i < 0 || degree < 0 || i + degree + 1 > m)
    fail(Errc::Index, "basis index out of range");
  const auto& k = T.knots;
  if (degree == 0) {
    if (k[i] <= t && t < k[i + 1]) return 1.0;
    if (t == T.back() && k[i] < k[i + 1]) {
      // Closed right end: the last non-empty span owns t = t_m.
      bool last_nonempty = true;
      for (int s = i + 1; s < m; ++s)
        if (k[s] < k[s + 1]) {
          last_nonempty = false;
          break;
        }
      if (last_nonempty) return 1.0;
    }
    return 0.0;
  }
  double left = 0.0;
  const double ld = k[i + degree] - k[i];
  if (ld > 0.0) left = (t - k[i]) / ld * bspline_basis(i, degree - 1, t, T);
  double right = 0.0;
  const double rd = k[i + degree + 1] - k[i + 1];
  if (rd > 0.0) right = (k[i + degree + 1] - t) / rd * bspline_basis(i + 1, degree - 1, t, T);
  return left + right;
}

namespace {

void validate_curve(const BSplineCurve& c) {
  const int n = static_cast<int>(c.control.size()) - 1;
  const int m = c.knots.last_index();
  if (c.degree < 1) fail(Errc::Construction, "degree must be at least 1");
  if (n < c.degree) fail(Errc::Construction, "need at least degree+1 control points");
  if (m != n + c.degree + 1)
    fail(Errc::Construction, "knot count must satisfy m = n + degree + 1");
  if (c.weights.size() != c.control.size())
    fail(Errc::Construction, "one weight per control point required");
  for (double w : c.weights)
    if (!(w > 0.0)) fail(Errc::Construction, "weights must be positive");
}

}  // namespace

BSplineCurve make_clamped_curve(std::vector<Vec2> control, int degree,
                                std::vector<double> weights) {
  KnotVector knots = clamped_uniform_knots(static_cast<int>(control.size()), degree);
  return make_curve(std::move(control), degree, std::move(knots), std::move(weights));
}

BSplineCurve make_curve(std::vector<Vec2> control, int degree, KnotVector knots,
                        std::vector<double> weights) {
  BSplineCurve c;
  c.control = std::move(control);
  c.degree = degree;
  c.knots = std::move(knots);
  c.weights = weights.empty() ? std::vector<double>(c.control.size(), 1.0) : std::move(weights);
  validate_curve(c);
  return c;
}

Vec2 eval_curve(const BSplineCurve& c, double t) {
  if (!(t >= c.knots.front() && t <= c.knots.back()))
    fail(Errc::Domain, "parameter outside the knot domain");
  Vec2 num{0.0, 0.0};
  double den = 0.0;
  for (std::size_t i = 0; i < c.control.size(); ++i) {
    const double b = bspline_basis(static_cast<int>(i), c.degree, t, c.knots);
    if (b == 0.0) continue;
    const double wb = c.weights[i] * b;
    num = num + wb * c.control[i];
    den += wb;
  }
  if (den < 1e-12) fail(Errc::Domain, "parameter outside the basis support");
  return {num.x / den, num.y / den};
}

std::vector<Vec2> sample_curve(const BSplineCurve& c, int n_samples) {
  if (n_samples < 2) fail(Errc::Config, "need at least 2 samples");
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  const double t0 = c.knots.front();
  const double t1 = c.knots.back();
  for (int s = 0; s < n_samples; ++s) {
    const double t = t0 + (t1 - t0) * static_cast<double>(s) / static_cast<double>(n_samples - 1);
    out.push_back(eval_curve(c, t));
  }
  return out;
}

int continuity_class(const BSplineCurve& c, int knot_index) {
  const auto& k = c.knots.knots;
  if (knot_index < 0 || knot_index >= static_cast<int>(k.size()))
    fail(Errc::Index, "knot index out of range");
  const double value = k[static_cast<std::size_t>(knot_index)];
  if (value == c.knots.front() || value == c.knots.back())
    fail(Errc::Domain, "continuity class applies to interior knots only");
  const int multiplicity =
      static_cast<int>(std::count(k.begin(), k.end(), value));
  return c.degree - multiplicity;
}

nlohmann::json curve_to_json(const BSplineCurve& c) {
  nlohmann::json j;
  j["degree"] = c.degree;
  j["knots"] = c.knots.knots;
  nlohmann::json control = nlohmann::json::array();
  for (const Vec2& p : c.control) control.push_back({p.x, p.y});
  j["control"] = std::move(control);
  j["weights"] = c.weights;
  return j;
}

BSplineCurve curve_from_json(const nlohmann::json& j) {
  try {
    std::vector<Vec2> control;
    for (const auto& p : j.at("control")) control.push_back({p.at(0), p.at(1)});
    return make_curve(std::move(control), j.at("degree").get<int>(),
                      KnotVector(j.at("knots").get<std::vector<double>>()),
                      j.at("weights").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::Construction, std::string("malformed curve JSON: ") + e.what());
  }
}

}  // namespace deltashape
