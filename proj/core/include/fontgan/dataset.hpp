#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fontgan/fonts.hpp"
#include "fontgan/image.hpp"

namespace fontgan {

// One manifest row: a (word, target font) pair with its source image and
// size-aligned ground truth on disk.
struct ManifestSample {
  std::string word;
  std::string source_path;  // relative to the manifest directory
  int64_t target_font_id = 0;
  std::string target_path;
  int64_t width = 0;
  int64_t patch_count = 0;
};

struct Manifest {
  int64_t version = 1;
  uint64_t seed = 0;
  std::vector<FontSpec> fonts;
  std::vector<ManifestSample> samples;
  std::filesystem::path base_dir;  // set on load; not serialized

  int64_t font_count() const { return static_cast<int64_t>(fonts.size()); }
};

// Renders every (word, target font) pair: the source image once per word,
// the aligned ground truth per pair, plus manifest.json. Duplicate words are
// dropped (returned in duplicates_dropped). Deterministic in (catalog,
// vocabulary, seed).
struct GenerateResult {
  Manifest manifest;
  int64_t duplicates_dropped = 0;
};
GenerateResult generate_dataset(const std::vector<FontSpec>& catalog,
                                const std::vector<std::string>& vocabulary,
                                int64_t source_font_id,
                                const std::filesystem::path& out_dir, uint64_t seed);

Manifest load_manifest(const std::filesystem::path& manifest_path);
void save_manifest(const Manifest& m, const std::filesystem::path& manifest_path);

// In-memory training record: pixels loaded, patches extracted.
struct WordSample {
  std::string word;
  PatchSequence source;
  PatchSequence ground_truth;
  int64_t source_font_id = 0;
  int64_t target_font_id = 0;
};

std::vector<WordSample> load_samples(const Manifest& m);

// Aspect-ratio bucketing: groups sample indices by patch count, shuffles
// within each group, chunks into batches of <= batch_size (every batch is
// homogeneous in patch count), then shuffles the batch order. Deterministic
// in seed.
std::vector<std::vector<int64_t>> bucket_batches(const std::vector<WordSample>& samples,
                                                 int64_t batch_size, uint64_t seed);

// built-in uppercase vocabulary used when a dataset config lists no words
const std::vector<std::string>& default_vocabulary();

}  // namespace fontgan
