#pragma once

#include <filesystem>

#include "fontgan/image.hpp"

namespace fontgan {

// 8-bit grayscale PNG. Values in [-1,1] map to round((v+1)*127.5) on write
// and px/127.5 - 1 on read. Reading converts RGB/RGBA/palette/16-bit inputs
// to 8-bit gray first. Filter type fixed to NONE so regenerated files are
// byte-identical.
void write_png(const std::filesystem::path& path, const WordImage& img);
WordImage read_png(const std::filesystem::path& path);

}  // namespace fontgan
