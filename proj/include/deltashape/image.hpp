#pragma once

#include <string>
#include <vector>

namespace deltashape {

/// Row-major grayscale raster with intensities in [0,1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> pixels;

  bool empty() const { return width <= 0 || height <= 0; }
  float at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  /// Edge-replicating access.
  float at_clamped(int x, int y) const;
};

GrayImage make_image(int width, int height, float fill = 0.0f);

/// Loads a PGM (P2/P5) or PNG file; color PNG input is converted via luma.
GrayImage load_image(const std::string& path);

void save_pgm(const std::string& path, const GrayImage& img);

/// 3x3 Sobel gradient magnitude, edge-replicated, same dimensions.
GrayImage sobel_magnitude(const GrayImage& img);

}  // namespace deltashape
