#include "fontgan/fonts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "fontgan/rng.hpp"

namespace fontgan {

namespace {

constexpr int64_t kGlyphW = 16;
constexpr int64_t kGlyphH = 24;
constexpr int64_t kGap = 2;
constexpr int64_t kMargin = 4;
constexpr int64_t kLineHeight = 32;
constexpr int64_t kPen = 1;  // square pen radius -> 3px strokes

struct Seg {
  int x0, y0, x1, y1;
};

// Stroke skeletons on a 16x24 grid, x in [2,13], y in [1,22].
const std::vector<Seg>& glyph_segments(char ch) {
  static const std::vector<Seg> table[26] = {
      /*A*/ {{2, 22, 7, 2}, {8, 2, 13, 22}, {4, 15, 11, 15}},
      /*B*/ {{3, 2, 3, 21}, {3, 2, 11, 2}, {12, 3, 12, 9}, {3, 11, 11, 11}, {12, 13, 12, 20}, {3, 21, 11, 21}},
      /*C*/ {{4, 2, 12, 2}, {3, 3, 3, 20}, {4, 21, 12, 21}},
      /*D*/ {{3, 2, 3, 21}, {3, 2, 10, 2}, {10, 2, 12, 5}, {12, 5, 12, 18}, {12, 18, 10, 21}, {3, 21, 10, 21}},
      /*E*/ {{3, 2, 3, 21}, {3, 2, 12, 2}, {3, 11, 10, 11}, {3, 21, 12, 21}},
      /*F*/ {{3, 2, 3, 21}, {3, 2, 12, 2}, {3, 11, 10, 11}},
      /*G*/ {{4, 2, 12, 2}, {3, 3, 3, 20}, {4, 21, 11, 21}, {12, 13, 12, 20}, {8, 13, 12, 13}},
      /*H*/ {{3, 2, 3, 21}, {12, 2, 12, 21}, {3, 11, 12, 11}},
      /*I*/ {{4, 2, 11, 2}, {7, 2, 7, 21}, {4, 21, 11, 21}},
      /*J*/ {{7, 2, 13, 2}, {10, 2, 10, 18}, {4, 21, 9, 21}, {9, 21, 10, 18}, {3, 20, 4, 21}},
      /*K*/ {{3, 2, 3, 21}, {12, 2, 4, 12}, {12, 21, 4, 12}},
      /*L*/ {{3, 2, 3, 21}, {3, 21, 12, 21}},
      /*M*/ {{2, 2, 2, 21}, {13, 2, 13, 21}, {2, 2, 7, 12}, {13, 2, 8, 12}},
      /*N*/ {{3, 2, 3, 21}, {12, 2, 12, 21}, {3, 2, 12, 21}},
      /*O*/ {{5, 2, 10, 2}, {5, 21, 10, 21}, {3, 4, 3, 19}, {12, 4, 12, 19}, {3, 4, 5, 2}, {10, 2, 12, 4}, {12, 19, 10, 21}, {5, 21, 3, 19}},
      /*P*/ {{3, 2, 3, 21}, {3, 2, 11, 2}, {12, 3, 12, 10}, {3, 11, 11, 11}},
      /*Q*/ {{5, 2, 10, 2}, {5, 21, 10, 21}, {3, 4, 3, 19}, {12, 4, 12, 19}, {3, 4, 5, 2}, {10, 2, 12, 4}, {12, 19, 10, 21}, {5, 21, 3, 19}, {9, 16, 13, 22}},
      /*R*/ {{3, 2, 3, 21}, {3, 2, 11, 2}, {12, 3, 12, 10}, {3, 11, 11, 11}, {6, 12, 12, 21}},
      /*S*/ {{4, 2, 12, 2}, {3, 3, 3, 9}, {4, 11, 11, 11}, {12, 12, 12, 19}, {3, 21, 11, 21}},
      /*T*/ {{2, 2, 13, 2}, {7, 2, 7, 21}},
      /*U*/ {{3, 2, 3, 18}, {12, 2, 12, 18}, {5, 21, 10, 21}, {3, 18, 5, 21}, {12, 18, 10, 21}},
      /*V*/ {{2, 2, 7, 21}, {13, 2, 8, 21}},
      /*W*/ {{2, 2, 4, 21}, {4, 21, 7, 9}, {8, 9, 11, 21}, {11, 21, 13, 2}},
      /*X*/ {{3, 2, 12, 21}, {12, 2, 3, 21}},
      /*Y*/ {{2, 2, 7, 11}, {13, 2, 8, 11}, {7, 11, 7, 21}},
      /*Z*/ {{3, 2, 12, 2}, {12, 3, 3, 20}, {3, 21, 12, 21}},
  };
  return table[ch - 'A'];
}

using GlyphBitmap = std::array<std::array<bool, kGlyphW>, kGlyphH>;

void stamp(GlyphBitmap& g, int x, int y) {
  for (int dy = -kPen; dy <= kPen; ++dy)
    for (int dx = -kPen; dx <= kPen; ++dx) {
      const int yy = y + dy, xx = x + dx;
      if (yy >= 0 && yy < kGlyphH && xx >= 0 && xx < kGlyphW) g[yy][xx] = true;
    }
}

GlyphBitmap rasterize_glyph(char ch, bool serif) {
  GlyphBitmap g{};
  for (const Seg& s : glyph_segments(ch)) {
    const int steps = std::max(std::abs(s.x1 - s.x0), std::abs(s.y1 - s.y0));
    for (int i = 0; i <= steps; ++i) {
      const double t = steps == 0 ? 0.0 : static_cast<double>(i) / steps;
      const int x = static_cast<int>(std::lround(s.x0 + t * (s.x1 - s.x0)));
      const int y = static_cast<int>(std::lround(s.y0 + t * (s.y1 - s.y0)));
      stamp(g, x, y);
    }
  }
  if (serif) {
    // widen the ink runs of the top and bottom stroke rows by 2px per side
    auto widen_row = [&g](int64_t row) {
      std::array<bool, kGlyphW> src = g[row];
      for (int x = 0; x < kGlyphW; ++x) {
        if (!src[x]) continue;
        for (int d = 1; d <= 2; ++d) {
          if (x - d >= 0) g[row][x - d] = true;
          if (x + d < kGlyphW) g[row][x + d] = true;
        }
      }
    };
    int top = -1, bottom = -1;
    for (int y = 0; y < kGlyphH; ++y)
      for (int x = 0; x < kGlyphW; ++x)
        if (g[y][x]) {
          if (top < 0) top = y;
          bottom = y;
        }
    if (top >= 0) {
      widen_row(top);
      widen_row(bottom);
    }
  }
  return g;
}

// per-row horizontal slant, normalized so the minimum shift is zero
std::vector<int64_t> shear_shifts(double shear) {
  std::vector<int64_t> dx(kGlyphH);
  for (int64_t y = 0; y < kGlyphH; ++y)
    dx[y] = static_cast<int64_t>(std::lround(shear * static_cast<double>(kGlyphH - 1 - y)));
  const int64_t mn = *std::min_element(dx.begin(), dx.end());
  for (int64_t& v : dx) v -= mn;
  return dx;
}

int64_t shear_extent(double shear) {
  auto dx = shear_shifts(shear);
  return *std::max_element(dx.begin(), dx.end());
}

void dilate_ink(WordImage& img, int64_t radius) {
  if (radius <= 0) return;
  WordImage src = img;
  for (int64_t r = 0; r < img.height; ++r)
    for (int64_t c = 0; c < img.width; ++c) {
      bool ink = false;
      for (int64_t dy = -radius; dy <= radius && !ink; ++dy)
        for (int64_t dx = -radius; dx <= radius && !ink; ++dx) {
          const int64_t y = r + dy, x = c + dx;
          if (y >= 0 && y < src.height && x >= 0 && x < src.width && src.at(y, x) < 0.0)
            ink = true;
        }
      if (ink) img.at(r, c) = -1.0;
    }
}

void hollow_ink(WordImage& img) {
  WordImage src = img;
  auto is_ink = [&src](int64_t y, int64_t x) {
    return y >= 0 && y < src.height && x >= 0 && x < src.width && src.at(y, x) < 0.0;
  };
  for (int64_t r = 0; r < img.height; ++r)
    for (int64_t c = 0; c < img.width; ++c) {
      if (src.at(r, c) >= 0.0) continue;
      const bool interior = is_ink(r - 1, c) && is_ink(r + 1, c) && is_ink(r, c - 1) &&
                            is_ink(r, c + 1);
      if (interior) img.at(r, c) = 1.0;
    }
}

}  // namespace

FontSpec make_procedural_font(int64_t font_id, std::string name, int64_t dilation_px,
                              double shear, bool outline, bool serif, uint64_t glyph_seed) {
  if (dilation_px < 0 || dilation_px > 2)
    throw std::invalid_argument("make_procedural_font: dilation " +
                                std::to_string(dilation_px) + " outside [0,2]");
  if (!(std::abs(shear) <= 0.4))
    throw std::invalid_argument("make_procedural_font: shear " + std::to_string(shear) +
                                " outside [-0.4,0.4]");
  FontSpec spec;
  spec.font_id = font_id;
  spec.name = std::move(name);
  spec.dilation_px = dilation_px;
  spec.shear = shear;
  spec.outline = outline;
  spec.serif = serif;
  spec.glyph_seed = glyph_seed;
  return spec;
}

int64_t font_advance(const FontSpec& spec) {
  return kGlyphW + 2 * spec.dilation_px + shear_extent(spec.shear);
}

WordImage render_word(const FontSpec& spec, const std::string& word) {
  if (word.empty()) throw std::invalid_argument("render_word: empty word");
  for (char ch : word)
    if (ch < 'A' || ch > 'Z')
      throw std::invalid_argument(std::string("render_word: unsupported character '") + ch +
                                  "' (A-Z only)");
  const int64_t n = static_cast<int64_t>(word.size());
  const int64_t advance = font_advance(spec);
  const int64_t width = n * advance + (n - 1) * kGap + 2 * kMargin;
  WordImage img = WordImage::filled(kLineHeight, width, 1.0);

  const auto dx = shear_shifts(spec.shear);
  for (int64_t i = 0; i < n; ++i) {
    const GlyphBitmap bitmap = rasterize_glyph(word[static_cast<size_t>(i)], spec.serif);
    int64_t jitter = 0;
    if (spec.glyph_seed != 0)
      jitter = static_cast<int64_t>(mix_seed(spec.glyph_seed, static_cast<uint64_t>(i)) % 3) - 1;
    const int64_t pen_x = kMargin + i * (advance + kGap) + spec.dilation_px;
    for (int64_t gy = 0; gy < kGlyphH; ++gy) {
      const int64_t row = kMargin + jitter + gy;
      for (int64_t gx = 0; gx < kGlyphW; ++gx) {
        if (!bitmap[gy][gx]) continue;
        const int64_t col = pen_x + dx[gy] + gx;
        if (row >= 0 && row < img.height && col >= 0 && col < img.width)
          img.at(row, col) = -1.0;
      }
    }
  }
  dilate_ink(img, spec.dilation_px);
  if (spec.outline) hollow_ink(img);
  return img;
}

std::vector<FontSpec> default_font_catalog() {
  return {
      make_procedural_font(0, "regular", 0, 0.0, false, false),
      make_procedural_font(1, "heavy", 1, 0.0, false, false),
      make_procedural_font(2, "black", 2, 0.0, false, false),
      make_procedural_font(3, "slant", 0, 0.3, false, false),
      make_procedural_font(4, "outline", 0, 0.0, true, false),
      make_procedural_font(5, "serif", 0, 0.0, false, true),
      make_procedural_font(6, "heavy-slant", 1, -0.25, false, false),
      make_procedural_font(7, "hollow-bold", 1, 0.0, true, false),
      make_procedural_font(8, "wobble", 0, 0.0, false, false, 7),
      make_procedural_font(9, "serif-slant", 0, 0.2, false, true),
  };
}

}  // namespace fontgan
