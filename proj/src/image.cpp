#include "deltashape/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <png.h>

#include "deltashape/errors.hpp"

namespace deltashape {

float GrayImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return at(x, y);
}

GrayImage make_image(int width, int height, float fill) {
  if (width <= 0 || height <= 0) fail(Errc::Domain, "image dimensions must be positive");
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

namespace {

int next_pgm_token(std::istream& in) {
  // Skips whitespace and '#' comments.
  while (true) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  in >> value;
  if (!in) fail(Errc::Io, "truncated PGM header");
  return value;
}

GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P5") fail(Errc::Io, path + " is not a PGM file");
  const int width = next_pgm_token(in);
  const int height = next_pgm_token(in);
  const int maxval = next_pgm_token(in);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
    fail(Errc::Io, "bad PGM header in " + path);
  GrayImage img = make_image(width, height);
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      int v = 0;
      in >> v;
      if (!in) fail(Errc::Io, "truncated PGM data in " + path);
      img.pixels[i] = static_cast<float>(v) / static_cast<float>(maxval);
    }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(count * static_cast<std::size_t>(bytes));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
      fail(Errc::Io, "truncated PGM data in " + path);
    for (std::size_t i = 0; i < count; ++i) {
      const int v = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
      img.pixels[i] = static_cast<float>(v) / static_cast<float>(maxval);
    }
  }
  return img;
}

GrayImage load_png(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) fail(Errc::Io, "cannot open " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    fail(Errc::Io, "libpng initialization failed");
  }
  std::vector<png_bytep> rows;
  GrayImage img;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    fail(Errc::Io, "failed to decode " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE)
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);  // Rec.601 luma coefficients
  png_read_update_info(png, info);

  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  img = make_image(width, height);
  std::vector<unsigned char> data(static_cast<std::size_t>(width) * height);
  rows.resize(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y)
    rows[static_cast<std::size_t>(y)] = data.data() + static_cast<std::size_t>(y) * width;
  png_read_image(png, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  for (std::size_t i = 0; i < data.size(); ++i)
    img.pixels[i] = static_cast<float>(data[i]) / 255.0f;
  return img;
}

}  // namespace

GrayImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open " + path);
  unsigned char magic[2] = {0, 0};
  in.read(reinterpret_cast<char*>(magic), 2);
  in.close();
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return load_pgm(path);
  if (magic[0] == 0x89 && magic[1] == 'P') return load_png(path);
  fail(Errc::Io, path + ": unsupported image format (PGM or PNG expected)");
}

void save_pgm(const std::string& path, const GrayImage& img) {
  if (img.empty()) fail(Errc::Domain, "cannot save an empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::Io, "cannot write " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  for (float v : img.pixels) {
    const int byte = std::clamp(static_cast<int>(std::lround(v * 255.0f)), 0, 255);
    out.put(static_cast<char>(byte));
  }
}

GrayImage sobel_magnitude(const GrayImage& img) {
  if (img.empty()) fail(Errc::Domain, "empty image");
  GrayImage mag = make_image(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const float tl = img.at_clamped(x - 1, y - 1), tc = img.at_clamped(x, y - 1),
                  tr = img.at_clamped(x + 1, y - 1);
      const float ml = img.at_clamped(x - 1, y), mr = img.at_clamped(x + 1, y);
      const float bl = img.at_clamped(x - 1, y + 1), bc = img.at_clamped(x, y + 1),
                  br = img.at_clamped(x + 1, y + 1);
      const float gx = (tr + 2.0f * mr + br) - (tl + 2.0f * ml + bl);
      const float gy = (bl + 2.0f * bc + br) - (tl + 2.0f * tc + tr);
      mag.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return mag;
}

}  // namespace deltashape
