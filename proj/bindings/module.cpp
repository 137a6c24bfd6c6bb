#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deltashape/bspline.hpp"
#include "deltashape/complex.hpp"
#include "deltashape/delaunay_oracle.hpp"
#include "deltashape/errors.hpp"
#include "deltashape/image.hpp"
#include "deltashape/nerve.hpp"
#include "deltashape/pipeline.hpp"
#include "deltashape/proximity.hpp"
#include "deltashape/triangulate.hpp"

namespace py = pybind11;
using namespace deltashape;

namespace {

std::vector<Cell> cells_from_lists(const std::vector<std::vector<VertexId>>& lists) {
  std::vector<Cell> out;
  out.reserve(lists.size());
  for (const auto& vs : lists) out.push_back(Cell(vs));
  return out;
}

std::vector<std::vector<VertexId>> lists_from_cells(const std::set<Cell>& cells) {
  std::vector<std::vector<VertexId>> out;
  out.reserve(cells.size());
  for (const Cell& c : cells) out.push_back(c.vertices);
  return out;
}

Region region_from_lists(const std::vector<std::vector<VertexId>>& lists) {
  std::set<Cell> cells;
  for (const auto& vs : lists) cells.insert(Cell(vs));
  return region_from_cells(std::move(cells));
}

std::vector<Keypoint> keypoints_from_tuples(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Keypoint> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y, 0.0});
  return out;
}

}  // namespace

PYBIND11_MODULE(_deltashape, m) {
  m.doc() = "Curvilinear triangulation and nerve/spoke decomposition of image shapes";

  py::register_exception<Error>(m, "DeltaShapeError");

  py::enum_<ComplexKind>(m, "ComplexKind")
      .value("Simplicial", ComplexKind::Simplicial)
      .value("Ordered", ComplexKind::Ordered)
      .value("Delta", ComplexKind::Delta);

  py::class_<Cell>(m, "Cell")
      .def(py::init<std::vector<VertexId>, int>(), py::arg("vertices"), py::arg("tag") = 0)
      .def_readonly("vertices", &Cell::vertices)
      .def_readonly("tag", &Cell::tag)
      .def_property_readonly("dim", &Cell::dim)
      .def("__repr__", [](const Cell& c) { return to_string(c); })
      .def("__eq__", [](const Cell& a, const Cell& b) { return a == b; })
      .def("__lt__", [](const Cell& a, const Cell& b) { return a < b; });

  py::class_<Complex>(m, "Complex")
      .def_property_readonly("kind", [](const Complex& cx) { return cx.kind; })
      .def("cells", [](const Complex& cx, int dim) { return lists_from_cells(cx.cells(dim)); },
           py::arg("dim"))
      .def("face",
           [](const Complex& cx, const std::vector<VertexId>& cell, int j) {
             return cx.face(Cell(cell), j).vertices;
           },
           py::arg("cell"), py::arg("j"))
      .def("vertex_ids",
           [](const Complex& cx) {
             const std::set<VertexId> vs = cx.vertex_set();
             return std::vector<VertexId>(vs.begin(), vs.end());
           })
      .def("is_valid",
           [](const Complex& cx) {
             const ValidityReport report = is_valid(cx);
             return std::make_pair(report.ok, report.violations);
           })
      .def("to_json", [](const Complex& cx) { return complex_to_json(cx).dump(); });

  m.def("build_complex",
        [](const std::vector<std::vector<VertexId>>& cells, const std::string& kind) {
          return build_complex(cells_from_lists(cells), complex_kind_from_string(kind));
        },
        py::arg("cells"), py::arg("kind") = "ordered");
  m.def("complex_from_json",
        [](const std::string& body) { return complex_from_json(nlohmann::json::parse(body)); });
  m.def("sew",
        [](const Complex& a, const Complex& b, VertexId p, VertexId q) { return sew(a, b, p, q); },
        py::arg("cxA"), py::arg("cxB"), py::arg("p"), py::arg("q"));
  m.def("identify_vertices", &identify_vertices, py::arg("cx"), py::arg("keep"), py::arg("merge"));

  m.def("nerve",
        [](const Complex& K, VertexId p) { return lists_from_cells(nerve(K, p)); },
        py::arg("complex"), py::arg("nucleus"));
  m.def("spoke_levels",
        [](const Complex& K, VertexId p) {
          const SpokeDecomposition dec = spoke_decomposition(K, p);
          std::vector<std::vector<std::vector<VertexId>>> out;
          for (const auto& level : dec.levels) out.push_back(lists_from_cells(level));
          return out;
        },
        py::arg("complex"), py::arg("nucleus"));
  m.def("spoke_chain",
        [](const Complex& K, VertexId p, int k) {
          const SpokeDecomposition dec = spoke_decomposition(K, p);
          std::vector<std::vector<VertexId>> out;
          for (const Cell& c : spoke_chain(dec, k)) out.push_back(c.vertices);
          return out;
        },
        py::arg("complex"), py::arg("nucleus"), py::arg("k"));
  m.def("max_nerve_cluster",
        [](const Complex& K) {
          const auto [p, cells] = max_nerve_cluster(K);
          return std::make_pair(p, lists_from_cells(cells));
        },
        py::arg("complex"));
  m.def("max_nerve_nuclei", &max_nerve_nuclei, py::arg("complex"));
  m.def("object_space",
        [](const Complex& K, VertexId p) { return lists_from_cells(object_space(K, p).cells); },
        py::arg("complex"), py::arg("nucleus"));

  py::class_<KnotVector>(m, "KnotVector")
      .def(py::init<std::vector<double>>())
      .def_readonly("knots", &KnotVector::knots);
  m.def("clamped_uniform_knots", &clamped_uniform_knots, py::arg("control_count"),
        py::arg("degree"));
  m.def("bspline_basis",
        [](int i, int degree, double t, const std::vector<double>& knots) {
          return bspline_basis(i, degree, t, KnotVector(knots));
        },
        py::arg("i"), py::arg("degree"), py::arg("t"), py::arg("knots"));

  py::class_<BSplineCurve>(m, "BSplineCurve")
      .def_readonly("degree", &BSplineCurve::degree)
      .def_readonly("weights", &BSplineCurve::weights)
      .def_property_readonly("knots", [](const BSplineCurve& c) { return c.knots.knots; })
      .def_property_readonly("control",
                             [](const BSplineCurve& c) {
                               std::vector<std::pair<double, double>> out;
                               for (const Vec2& p : c.control) out.push_back({p.x, p.y});
                               return out;
                             })
      .def("evaluate",
           [](const BSplineCurve& c, double t) {
             const Vec2 p = eval_curve(c, t);
             return std::make_pair(p.x, p.y);
           },
           py::arg("t"))
      .def("sample",
           [](const BSplineCurve& c, int n) {
             std::vector<std::pair<double, double>> out;
             for (const Vec2& p : sample_curve(c, n)) out.push_back({p.x, p.y});
             return out;
           },
           py::arg("n_samples"))
      .def("continuity_class",
           [](const BSplineCurve& c, int knot_index) { return continuity_class(c, knot_index); },
           py::arg("knot_index"))
      .def("to_json", [](const BSplineCurve& c) { return curve_to_json(c).dump(); });
  m.def("make_clamped_curve",
        [](const std::vector<std::pair<double, double>>& control, int degree,
           const std::vector<double>& weights) {
          std::vector<Vec2> pts;
          for (const auto& [x, y] : control) pts.push_back({x, y});
          return make_clamped_curve(std::move(pts), degree, weights);
        },
        py::arg("control"), py::arg("degree"), py::arg("weights") = std::vector<double>{});

  py::class_<GrayImage>(m, "GrayImage")
      .def(py::init([](int width, int height, const std::vector<float>& pixels) {
             GrayImage img = make_image(width, height);
             if (pixels.size() != img.pixels.size())
               fail(Errc::Domain, "pixel count must equal width*height");
             img.pixels = pixels;
             return img;
           }),
           py::arg("width"), py::arg("height"), py::arg("pixels"))
      .def_readonly("width", &GrayImage::width)
      .def_readonly("height", &GrayImage::height)
      .def_readonly("pixels", &GrayImage::pixels)
      .def_static("load", &load_image, py::arg("path"))
      .def("save_pgm", [](const GrayImage& img, const std::string& path) { save_pgm(path, img); });

  py::class_<Keypoint>(m, "Keypoint")
      .def_readonly("x", &Keypoint::x)
      .def_readonly("y", &Keypoint::y)
      .def_readonly("score", &Keypoint::score)
      .def("__repr__", [](const Keypoint& k) {
        return "Keypoint(" + std::to_string(k.x) + ", " + std::to_string(k.y) + ")";
      });

  py::class_<Mesh>(m, "Mesh")
      .def_readonly("vertices", &Mesh::vertices)
      .def_readonly("triangles", &Mesh::triangles)
      .def_readonly("duplicates_removed", &Mesh::duplicates_removed)
      .def_property_readonly("edges",
                             [](const Mesh& mesh) {
                               std::vector<EdgeKey> out;
                               for (const auto& [e, adj] : mesh.edge_adjacency) out.push_back(e);
                               return out;
                             })
      .def("edge_triangles",
           [](const Mesh& mesh, int a, int b) { return mesh.edge_adjacency.at(edge_key(a, b)); },
           py::arg("a"), py::arg("b"))
      .def("to_json", [](const Mesh& mesh) { return mesh_to_json(mesh).dump(); });

  py::class_<CurvedMesh>(m, "CurvedMesh")
      .def_property_readonly("base", [](const CurvedMesh& cm) { return cm.base; })
      .def("spline",
           [](const CurvedMesh& cm, int a, int b) { return cm.edge_splines.at(edge_key(a, b)); },
           py::arg("a"), py::arg("b"))
      .def("hull_containment",
           [](const CurvedMesh& cm, int samples) {
             const ContainmentReport report = hull_containment(cm, samples);
             return std::make_pair(report.contained, report.worst_violation);
           },
           py::arg("samples_per_edge") = 32);

  m.def("detect_keypoints", &detect_keypoints, py::arg("image"), py::arg("max_count"),
        py::arg("nms_radius") = 8.0);
  m.def("delaunay",
        [](const std::vector<std::pair<double, double>>& pts) {
          return delaunay(keypoints_from_tuples(pts));
        },
        py::arg("points"));
  m.def("delaunay_bruteforce",
        [](const std::vector<std::pair<double, double>>& pts) {
          std::vector<Vec2> v;
          for (const auto& [x, y] : pts) v.push_back({x, y});
          const auto tris = delaunay_bruteforce(v);
          return std::vector<std::array<int, 3>>(tris.begin(), tris.end());
        },
        py::arg("points"));
  m.def("mesh_complex", &mesh_complex, py::arg("mesh"));
  m.def("curvilinear",
        [](const Mesh& mesh, double interior_weight, int degree) {
          return curvilinear(mesh, {interior_weight}, degree);
        },
        py::arg("mesh"), py::arg("interior_weight") = 1.0, py::arg("degree") = 0);

  m.def("strong_near",
        [](const std::vector<std::vector<VertexId>>& a,
           const std::vector<std::vector<VertexId>>& b) {
          return strong_near(region_from_lists(a), region_from_lists(b));
        },
        py::arg("region_a"), py::arg("region_b"));
  m.def("graded_strong_near",
        [](const std::vector<std::vector<VertexId>>& a,
           const std::vector<std::vector<VertexId>>& b) {
          return graded_strong_near(region_from_lists(a), region_from_lists(b));
        },
        py::arg("region_a"), py::arg("region_b"));
  m.def("lodato_near",
        [](const std::vector<std::vector<VertexId>>& a,
           const std::vector<std::vector<VertexId>>& b) {
          return lodato_near(region_from_lists(a), region_from_lists(b));
        },
        py::arg("region_a"), py::arg("region_b"));
  m.def("theorem_suite",
        [](const Complex& K, int trials, std::uint64_t seed) {
          py::module_ json = py::module_::import("json");
          return json.attr("loads")(report_to_json(theorem_suite(K, trials, seed)).dump());
        },
        py::arg("complex"), py::arg("trials") = 10, py::arg("seed") = 0x5eed);

  m.def("run_pipeline",
        [](const GrayImage& img, int max_keypoints, double nms_radius, int spline_degree,
           double interior_weight, int samples_per_edge, const std::string& mode,
           const std::string& highlight) {
          PipelineConfig config;
          config.max_keypoints = max_keypoints;
          config.nms_radius = nms_radius;
          config.spline_degree = spline_degree;
          config.interior_weight = interior_weight;
          config.samples_per_edge = samples_per_edge;
          config.mode = render_mode_from_string(mode);
          config.highlight = highlight_from_string(highlight);
          const PipelineArtifacts artifacts = run_pipeline(img, config);
          py::module_ json = py::module_::import("json");
          py::dict out;
          out["mesh"] = json.attr("loads")(artifacts.mesh_json.dump());
          out["decomposition"] = json.attr("loads")(artifacts.decomposition_json.dump());
          out["svg"] = artifacts.svg;
          out["nucleus"] = artifacts.nucleus;
          return out;
        },
        py::arg("image"), py::arg("max_keypoints") = 100, py::arg("nms_radius") = 8.0,
        py::arg("spline_degree") = 0, py::arg("interior_weight") = 1.0,
        py::arg("samples_per_edge") = 32, py::arg("mode") = "both",
        py::arg("highlight") = "spokes");
}
