#include "deltashape/pipeline.hpp"

#include <filesystem>
#include <fstream>

#include "deltashape/errors.hpp"

namespace deltashape {

RenderMode render_mode_from_string(const std::string& s) {
  if (s == "rect") return RenderMode::Rectilinear;
  if (s == "curve") return RenderMode::Curvilinear;
  if (s == "both") return RenderMode::Both;
  fail(Errc::Config, "unknown mode: " + s);
}

Highlight highlight_from_string(const std::string& s) {
  if (s == "nerve") return Highlight::Nerve;
  if (s == "spokes") return Highlight::Spokes;
  if (s == "chain") return Highlight::Chain;
  if (s == "none") return Highlight::None;
  fail(Errc::Config, "unknown highlight: " + s);
}

void PipelineConfig::validate() const {
  if (max_keypoints < 3) fail(Errc::Config, "max_keypoints must be at least 3");
  if (!(nms_radius > 0.0)) fail(Errc::Config, "nms_radius must be positive");
  if (spline_degree != 0 && spline_degree < 2)
    fail(Errc::Config, "spline degree must be at least 2 (0 selects per-edge default)");
  if (!(interior_weight > 0.0)) fail(Errc::Config, "interior_weight must be positive");
  if (samples_per_edge < 2) fail(Errc::Config, "samples_per_edge must be at least 2");
}

PipelineArtifacts run_pipeline(const GrayImage& img, const PipelineConfig& config) {
  config.validate();
  PipelineArtifacts out;

  const std::vector<Keypoint> keypoints =
      detect_keypoints(img, config.max_keypoints, config.nms_radius);
  out.mesh = delaunay(keypoints);

  if (config.mode != RenderMode::Rectilinear)
    out.curved = curvilinear(out.mesh, {config.interior_weight}, config.spline_degree);

  const Complex cx = mesh_complex(out.mesh);
  out.nucleus = max_nerve_cluster(cx).first;
  out.decomposition = spoke_decomposition(cx, out.nucleus);

  out.mesh_json = mesh_to_json(out.mesh, out.curved ? &*out.curved : nullptr);
  out.decomposition_json = complex_to_json(cx);
  const nlohmann::json dec = decomposition_to_json(out.decomposition);
  out.decomposition_json["nucleus"] = dec["nucleus"];
  out.decomposition_json["levels"] = dec["levels"];
  out.svg = render_svg(out.mesh, out.curved ? &*out.curved : nullptr, &out.decomposition, config,
                       img.width, img.height);
  return out;
}

PipelineArtifacts run_pipeline_file(const std::string& image_path, const PipelineConfig& config,
                                    const std::string& out_dir) {
  const GrayImage img = load_image(image_path);
  PipelineArtifacts artifacts = run_pipeline(img, config);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(Errc::Io, "cannot create output directory " + out_dir);
  auto write = [&](const std::string& name, const std::string& body) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(Errc::Io, "cannot write " + path.string());
    f << body;
  };
  write("mesh.json", artifacts.mesh_json.dump(2) + "\n");
  write("decomposition.json", artifacts.decomposition_json.dump(2) + "\n");
  write("overlay.svg", artifacts.svg);
  return artifacts;
}

}  // namespace deltashape
