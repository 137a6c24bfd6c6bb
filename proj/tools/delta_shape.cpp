#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "deltashape/delaunay_oracle.hpp"
#include "deltashape/errors.hpp"
#include "deltashape/pipeline.hpp"
#include "deltashape/proximity.hpp"

namespace ds = deltashape;

namespace {

// Exit codes: 0 ok, 1 check failure, 2 I/O, 3 insufficient keypoints,
// 4 invalid config, 5 other library error.
int exit_code_for(const ds::Error& e) {
  switch (e.code()) {
    case ds::Errc::Io: return 2;
    case ds::Errc::InsufficientKeypoints: return 3;
    case ds::Errc::Config: return 4;
    default: return 5;
  }
}

std::vector<ds::Keypoint> random_points(int count, std::mt19937_64& rng) {
  std::vector<ds::Keypoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = static_cast<double>(rng()) / static_cast<double>(std::mt19937_64::max());
    const double y = static_cast<double>(rng()) / static_cast<double>(std::mt19937_64::max());
    pts.push_back({x * 100.0, y * 100.0, 1.0});
  }
  return pts;
}

int run_verify(const std::string& image, int random_meshes, int trials, std::uint64_t seed,
               const std::string& out_file) {
  nlohmann::json reports = nlohmann::json::array();
  bool all_ok = true;

  auto add_report = [&](const std::string& source, const ds::TheoremReport& report) {
    nlohmann::json entry;
    entry["source"] = source;
    entry["checks"] = ds::report_to_json(report);
    reports.push_back(std::move(entry));
    all_ok = all_ok && report.all_passed();
  };

  if (!image.empty()) {
    const ds::GrayImage img = ds::load_image(image);
    ds::PipelineConfig config;
    const ds::PipelineArtifacts artifacts = ds::run_pipeline(img, config);
    const ds::Complex cx = ds::mesh_complex(artifacts.mesh);
    const ds::FeatureExtractor phi = ds::image_features(img, artifacts.mesh);
    add_report(image, ds::theorem_suite(cx, trials, seed, &phi));
  } else {
    std::mt19937_64 rng(seed);
    for (int m = 0; m < random_meshes; ++m) {
      const ds::Mesh mesh = ds::delaunay(random_points(20, rng));
      add_report("random-mesh-" + std::to_string(m),
                 ds::theorem_suite(ds::mesh_complex(mesh), trials, rng()));
    }
  }

  const std::string body = reports.dump(2) + "\n";
  if (out_file.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) ds::fail(ds::Errc::Io, "cannot write " + out_file);
    f << body;
  }
  std::cerr << (all_ok ? "verify: all checks passed" : "verify: FAILURES reported") << "\n";
  return all_ok ? 0 : 1;
}

int run_oracle(int sets, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int mismatches = 0;
  for (int s = 0; s < sets; ++s) {
    const std::vector<ds::Keypoint> pts = random_points(points, rng);
    const ds::Mesh mesh = ds::delaunay(pts);
    std::set<std::array<int, 3>> got(mesh.triangles.begin(), mesh.triangles.end());
    const std::set<std::array<int, 3>> want = ds::delaunay_bruteforce(mesh.points());
    if (got != want) {
      ++mismatches;
      std::cerr << "mismatch on set " << s << ": " << got.size() << " vs " << want.size()
                << " triangles\n";
    }
  }
  std::cout << sets << " point sets checked, " << mismatches << " mismatches\n";
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape approximation via curvilinear triangulation of gradient keypoints"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run the full pipeline on an image");
  std::string image_path;
  std::string out_dir = "out";
  ds::PipelineConfig config;
  std::string mode = "both";
  std::string highlight = "spokes";
  run->add_option("image", image_path, "PGM or PNG input image")->required();
  run->add_option("--max-keypoints", config.max_keypoints, "Maximum keypoints (default 100)");
  run->add_option("--nms-radius", config.nms_radius, "Non-max suppression radius (default 8)");
  run->add_option("--degree", config.spline_degree,
                  "Spline degree, >= 2 (default: 2 boundary / 3 shared)");
  run->add_option("--weight", config.interior_weight, "Interior control-point weight (default 1)");
  run->add_option("--samples", config.samples_per_edge, "Spline samples per edge (default 32)");
  run->add_option("--mode", mode, "rect|curve|both (default both)");
  run->add_option("--highlight", highlight, "nerve|spokes|chain|none (default spokes)");
  run->add_option("--out", out_dir, "Output directory (default ./out)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the proximity checks");
  std::string verify_image;
  int random_meshes = 0;
  int trials = 10;
  std::uint64_t seed = 0x5eed;
  std::string verify_out;
  verify->add_option("image", verify_image, "Image to verify");
  verify->add_option("--random", random_meshes, "Verify N random Delaunay meshes instead");
  verify->add_option("--trials", trials, "Trials per complex (default 10)");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--out", verify_out, "Write the report JSON here instead of stdout");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Cross-check the mesh builder against the "
                                              "brute-force enumerator");
  int oracle_sets = 50;
  int oracle_points = 12;
  std::uint64_t oracle_seed = 0xde1a;
  oracle->add_option("--sets", oracle_sets, "Number of random point sets (default 50)");
  oracle->add_option("--points", oracle_points, "Points per set (default 12)");
  oracle->add_option("--seed", oracle_seed, "Random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      config.mode = ds::render_mode_from_string(mode);
      config.highlight = ds::highlight_from_string(highlight);
      const ds::PipelineArtifacts artifacts = ds::run_pipeline_file(image_path, config, out_dir);
      if (artifacts.mesh.duplicates_removed > 0)
        std::cerr << "warning: removed " << artifacts.mesh.duplicates_removed
                  << " duplicate keypoint(s)\n";
      std::cout << "vertices: " << artifacts.mesh.vertices.size()
                << ", triangles: " << artifacts.mesh.triangles.size()
                << ", nucleus: " << artifacts.nucleus
                << ", spoke levels: " << artifacts.decomposition.max_level() << "\n";
      std::cout << "wrote " << out_dir << "/mesh.json, decomposition.json, overlay.svg\n";
      return 0;
    }
    if (verify->parsed()) {
      if (verify_image.empty() && random_meshes <= 0)
        ds::fail(ds::Errc::Config, "verify needs an image or --random N");
      return run_verify(verify_image, random_meshes, trials, seed, verify_out);
    }
    if (oracle->parsed()) return run_oracle(oracle_sets, oracle_points, oracle_seed);
  } catch (const ds::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
