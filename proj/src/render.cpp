#include <algorithm>
#include <cstdio>
#include <sstream>

#include "deltashape/errors.hpp"
#include "deltashape/pipeline.hpp"

namespace deltashape {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Fig-style palette: level 1 red, level 2 green, deeper levels cycle.
const char* level_color(int level) {
  static const char* palette[] = {"#e53935", "#43a047", "#1e88e5",
                                  "#fb8c00", "#8e24aa", "#00897b"};
  return palette[(level - 1) % 6];
}

}  // namespace

std::string render_svg(const Mesh& mesh, const CurvedMesh* curved,
                       const SpokeDecomposition* decomposition, const PipelineConfig& config,
                       int width, int height) {
  if (decomposition) {
    std::set<std::array<int, 3>> tri_set(mesh.triangles.begin(), mesh.triangles.end());
    for (std::size_t k = 1; k < decomposition->levels.size(); ++k) {
      for (const Cell& c : decomposition->levels[k]) {
        std::array<int, 3> t{static_cast<int>(c.vertices[0]), static_cast<int>(c.vertices[1]),
                             static_cast<int>(c.vertices[2])};
        if (!tri_set.count(t))
          fail(Errc::Consistency, "decomposition cell " + to_string(c) + " not a mesh triangle");
      }
    }
    if (!mesh.vertices.empty() &&
        (decomposition->nucleus < 0 ||
         decomposition->nucleus >= static_cast<VertexId>(mesh.vertices.size())))
      fail(Errc::Consistency, "nucleus not a mesh vertex");
  }

  double min_x = 0.0, min_y = 0.0, max_x = width, max_y = height;
  if (width <= 0 || height <= 0) {
    min_x = min_y = std::numeric_limits<double>::infinity();
    max_x = max_y = -std::numeric_limits<double>::infinity();
    for (const Keypoint& k : mesh.vertices) {
      min_x = std::min(min_x, k.x);
      min_y = std::min(min_y, k.y);
      max_x = std::max(max_x, k.x);
      max_y = std::max(max_y, k.y);
    }
    min_x -= 2.0;
    min_y -= 2.0;
    max_x += 2.0;
    max_y += 2.0;
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt(min_x)
      << " " << fmt(min_y) << " " << fmt(max_x - min_x) << " " << fmt(max_y - min_y) << "\">\n";

  // Spoke level fills under the edge layers.
  if (decomposition && config.highlight != Highlight::None) {
    svg << "  <g id=\"spokes\" stroke=\"none\" fill-opacity=\"0.55\">\n";
    auto draw_cell = [&](const Cell& c, int level) {
      svg << "    <polygon fill=\"" << level_color(level) << "\" points=\"";
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        const Vec2 p = mesh.point(static_cast<int>(c.vertices[i]));
        if (i) svg << ' ';
        svg << fmt(p.x) << ',' << fmt(p.y);
      }
      svg << "\"/>\n";
    };
    if (config.highlight == Highlight::Nerve) {
      if (decomposition->max_level() >= 1)
        for (const Cell& c : decomposition->levels[1]) draw_cell(c, 1);
    } else if (config.highlight == Highlight::Chain) {
      const int depth = decomposition->max_level();
      const std::vector<Cell> chain = spoke_chain(*decomposition, depth);
      for (int j = 1; j <= depth; ++j) draw_cell(chain[static_cast<std::size_t>(j)], j);
    } else {
      for (int k = 1; k <= decomposition->max_level(); ++k)
        for (const Cell& c : decomposition->levels[static_cast<std::size_t>(k)]) draw_cell(c, k);
    }
    svg << "  </g>\n";
  }

  if (config.mode != RenderMode::Curvilinear) {
    svg << "  <g id=\"rect-edges\" stroke=\"#555555\" stroke-width=\"0.75\" fill=\"none\">\n";
    for (const auto& [e, adj] : mesh.edge_adjacency) {
      const Vec2 a = mesh.point(e.first);
      const Vec2 b = mesh.point(e.second);
      svg << "    <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x)
          << "\" y2=\"" << fmt(b.y) << "\"/>\n";
    }
    svg << "  </g>\n";
  }

  if (curved && config.mode != RenderMode::Rectilinear) {
    svg << "  <g id=\"spline-edges\" stroke=\"#1565c0\" stroke-width=\"0.75\" fill=\"none\">\n";
    for (const auto& [e, curve] : curved->edge_splines) {
      svg << "    <polyline points=\"";
      const std::vector<Vec2> pts = sample_curve(curve, config.samples_per_edge);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg << ' ';
        svg << fmt(pts[i].x) << ',' << fmt(pts[i].y);
      }
      svg << "\"/>\n";
    }
    svg << "  </g>\n";
  }

  if (decomposition) {
    const Vec2 p = mesh.point(static_cast<int>(decomposition->nucleus));
    svg << "  <g id=\"nucleus\">\n";
    svg << "    <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
        << "\" r=\"2.5\" fill=\"#fdd835\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
    svg << "  </g>\n";
  }

  svg << "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"6\">\n";
  int row = 0;
  auto legend_row = [&](const std::string& color, const std::string& label) {
    const double y = min_y + 8.0 + 9.0 * row++;
    svg << "    <rect x=\"" << fmt(min_x + 4.0) << "\" y=\"" << fmt(y - 5.0)
        << "\" width=\"6\" height=\"6\" fill=\"" << color << "\"/>\n";
    svg << "    <text x=\"" << fmt(min_x + 13.0) << "\" y=\"" << fmt(y) << "\">" << label
        << "</text>\n";
  };
  if (decomposition && config.highlight != Highlight::None) {
    legend_row(level_color(1), "1-spoke complex");
    legend_row(level_color(2), "2-spoke complex");
    legend_row("#fdd835", "nucleus");
  }
  if (config.mode != RenderMode::Curvilinear) legend_row("#555555", "rectilinear edges");
  if (curved && config.mode != RenderMode::Rectilinear) legend_row("#1565c0", "spline edges");
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace deltashape
