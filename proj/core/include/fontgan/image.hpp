#pragma once

#include <cstdint>
#include <vector>

namespace fontgan {

// Grayscale word image, row-major, values in [-1,1]: ink = -1, background = +1.
struct WordImage {
  int64_t height = 0;
  int64_t width = 0;
  std::vector<double> pixels;

  static WordImage filled(int64_t height, int64_t width, double value);
  double& at(int64_t r, int64_t c) { return pixels[r * width + c]; }
  double at(int64_t r, int64_t c) const { return pixels[r * width + c]; }
};

constexpr int64_t kPatchSize = 32;

// A height-32 word image as consecutive 32x32 tiles. The final tile is
// padded on the right with background; assemble() crops it back off.
struct PatchSequence {
  std::vector<WordImage> patches;
  int64_t original_width = 0;
  int64_t pad_columns = 0;

  int64_t count() const { return static_cast<int64_t>(patches.size()); }
};

// Bilinear resample to height 32, width rounded half-away-from-zero to
// preserve the aspect ratio. Identity when already 32 high.
WordImage resize_to_height(const WordImage& img, int64_t target_height = kPatchSize);

// Bilinear resample (both axes) to an explicit size; identity when equal.
WordImage resize_bilinear(const WordImage& img, int64_t out_height, int64_t out_width);

// img must be 32 high. Non-overlapping 32-column windows, left to right.
PatchSequence extract_patches(const WordImage& img);

// Width-wise concatenation of the tiles, cropped to original_width.
WordImage assemble_patches(const PatchSequence& seq);

// Resample target_render onto source's exact dimensions so both yield the
// same patch count.
WordImage align_ground_truth(const WordImage& source, const WordImage& target_render);

}  // namespace fontgan
