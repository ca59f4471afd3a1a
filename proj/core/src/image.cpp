#include "fontgan/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fontgan {

WordImage WordImage::filled(int64_t height, int64_t width, double value) {
  WordImage img;
  img.height = height;
  img.width = width;
  img.pixels.assign(static_cast<size_t>(height * width), value);
  return img;
}

WordImage resize_bilinear(const WordImage& img, int64_t out_height, int64_t out_width) {
  if (img.height < 1 || img.width < 1)
    throw std::invalid_argument("resize_bilinear: empty source image");
  if (out_height == img.height && out_width == img.width) return img;
  WordImage out = WordImage::filled(out_height, out_width, 0.0);
  const double sy = static_cast<double>(img.height) / static_cast<double>(out_height);
  const double sx = static_cast<double>(img.width) / static_cast<double>(out_width);
  for (int64_t r = 0; r < out_height; ++r) {
    // half-pixel centers, edges clamped
    double fy = (static_cast<double>(r) + 0.5) * sy - 0.5;
    fy = std::clamp(fy, 0.0, static_cast<double>(img.height - 1));
    const int64_t y0 = static_cast<int64_t>(std::floor(fy));
    const int64_t y1 = std::min(y0 + 1, img.height - 1);
    const double wy = fy - static_cast<double>(y0);
    for (int64_t c = 0; c < out_width; ++c) {
      double fx = (static_cast<double>(c) + 0.5) * sx - 0.5;
      fx = std::clamp(fx, 0.0, static_cast<double>(img.width - 1));
      const int64_t x0 = static_cast<int64_t>(std::floor(fx));
      const int64_t x1 = std::min(x0 + 1, img.width - 1);
      const double wx = fx - static_cast<double>(x0);
      const double top = img.at(y0, x0) * (1.0 - wx) + img.at(y0, x1) * wx;
      const double bot = img.at(y1, x0) * (1.0 - wx) + img.at(y1, x1) * wx;
      out.at(r, c) = top * (1.0 - wy) + bot * wy;
    }
  }
  return out;
}

WordImage resize_to_height(const WordImage& img, int64_t target_height) {
  if (img.height < 1) throw std::invalid_argument("resize_to_height: empty image");
  const double exact =
      static_cast<double>(img.width) * static_cast<double>(target_height) /
      static_cast<double>(img.height);
  // round half away from zero so widths are bit-exactly reproducible
  const int64_t out_width = std::max<int64_t>(1, static_cast<int64_t>(std::round(exact)));
  return resize_bilinear(img, target_height, out_width);
}

PatchSequence extract_patches(const WordImage& img) {
  if (img.height != kPatchSize)
    throw std::invalid_argument("extract_patches: image height " +
                                std::to_string(img.height) + ", expected " +
                                std::to_string(kPatchSize));
  PatchSequence seq;
  seq.original_width = img.width;
  const int64_t n = (img.width + kPatchSize - 1) / kPatchSize;
  seq.pad_columns = n * kPatchSize - img.width;
  seq.patches.reserve(static_cast<size_t>(n));
  for (int64_t p = 0; p < n; ++p) {
    WordImage tile = WordImage::filled(kPatchSize, kPatchSize, 1.0);  // background
    const int64_t c0 = p * kPatchSize;
    const int64_t cols = std::min(kPatchSize, img.width - c0);
    for (int64_t r = 0; r < kPatchSize; ++r)
      for (int64_t c = 0; c < cols; ++c) tile.at(r, c) = img.at(r, c0 + c);
    seq.patches.push_back(std::move(tile));
  }
  return seq;
}

WordImage assemble_patches(const PatchSequence& seq) {
  if (seq.patches.empty())
    throw std::invalid_argument("assemble_patches: empty patch sequence");
  for (const WordImage& p : seq.patches)
    if (p.height != kPatchSize || p.width != kPatchSize)
      throw std::invalid_argument("assemble_patches: every patch must be 32x32");
  WordImage out = WordImage::filled(kPatchSize, seq.original_width, 1.0);
  for (int64_t p = 0; p < seq.count(); ++p) {
    const int64_t c0 = p * kPatchSize;
    const int64_t cols = std::min(kPatchSize, seq.original_width - c0);
    for (int64_t r = 0; r < kPatchSize; ++r)
      for (int64_t c = 0; c < cols; ++c) out.at(r, c0 + c) = seq.patches[p].at(r, c);
  }
  return out;
}

WordImage align_ground_truth(const WordImage& source, const WordImage& target_render) {
  return resize_bilinear(target_render, source.height, source.width);
}

}  // namespace fontgan
