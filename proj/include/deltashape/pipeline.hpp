#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "deltashape/image.hpp"
#include "deltashape/nerve.hpp"
#include "deltashape/triangulate.hpp"

namespace deltashape {

enum class RenderMode { Rectilinear, Curvilinear, Both };
enum class Highlight { Nerve, Spokes, Chain, None };

RenderMode render_mode_from_string(const std::string& s);
Highlight highlight_from_string(const std::string& s);

struct PipelineConfig {
  int max_keypoints = 100;
  double nms_radius = 8.0;
  int spline_degree = 0;  // 0 selects 2 for boundary edges, 3 for shared edges
  double interior_weight = 1.0;
  int samples_per_edge = 32;
  RenderMode mode = RenderMode::Both;
  Highlight highlight = Highlight::Spokes;

  void validate() const;
};

struct PipelineArtifacts {
  Mesh mesh;
  std::optional<CurvedMesh> curved;
  SpokeDecomposition decomposition;
  VertexId nucleus = 0;
  nlohmann::json mesh_json;
  nlohmann::json decomposition_json;
  std::string svg;
};

/// Keypoints -> Delaunay mesh -> per-edge splines -> maximal nerve cluster ->
/// spoke decomposition, plus the JSON and SVG artifacts.
PipelineArtifacts run_pipeline(const GrayImage& img, const PipelineConfig& config);

/// File-based variant: loads the image, runs the pipeline and writes
/// mesh.json, decomposition.json and overlay.svg into out_dir.
PipelineArtifacts run_pipeline_file(const std::string& image_path, const PipelineConfig& config,
                                    const std::string& out_dir);

/// SVG overlay: straight-edge layer, sampled-spline layer, spoke levels
/// color-coded (level 1 red, level 2 green), nucleus marker and legend.
/// Coordinates are written with 3 decimal places. Canvas follows the image
/// when width/height are given, else the vertex bounding box.
std::string render_svg(const Mesh& mesh, const CurvedMesh* curved,
                       const SpokeDecomposition* decomposition, const PipelineConfig& config,
                       int width = 0, int height = 0);

}  // namespace deltashape
