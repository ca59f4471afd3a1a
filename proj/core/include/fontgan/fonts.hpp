#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fontgan/image.hpp"

namespace fontgan {

// A procedural font style: every glyph is derived from one built-in 16x24
// stroke skeleton by deterministic transforms. Rendering is a pure function
// of (FontSpec, word), so regenerating a corpus reproduces it bit for bit.
struct FontSpec {
  int64_t font_id = 0;
  std::string name;
  int64_t dilation_px = 0;   // stroke thickening radius, 0..2
  double shear = 0.0;        // columns per row of slant, |shear| <= 0.4
  bool outline = false;      // hollow strokes (boundary ink only)
  bool serif = false;        // bars at stroke ends of top/bottom rows
  uint64_t glyph_seed = 0;   // nonzero: deterministic 1px per-glyph baseline wobble
};

// validates style ranges; throws std::invalid_argument on violation
FontSpec make_procedural_font(int64_t font_id, std::string name, int64_t dilation_px,
                              double shear, bool outline, bool serif,
                              uint64_t glyph_seed = 0);

// glyph advance in pixels for this style (uniform across letters)
int64_t font_advance(const FontSpec& spec);

// word must be non-empty, A-Z only. Output height is 32 (24px glyphs with
// 4px margins), ink -1 on +1 background, glyphs separated by a 2-column gap.
WordImage render_word(const FontSpec& spec, const std::string& word);

// the ten built-in styles; font 0 ("regular") plays the source-font role
std::vector<FontSpec> default_font_catalog();

}  // namespace fontgan
