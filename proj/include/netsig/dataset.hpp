#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netsig/gray_image.hpp"

namespace netsig {

struct TileSpec {
    int width = 0;
    int height = 0;
};

struct LabeledSample {
    GrayImage image;
    int class_id = 0;
    std::string source_path;
    int tile_index = 0;
};

/// A labeled texture collection. class_ids are dense 0..C-1, assigned by
/// lexicographic class-name order.
struct Dataset {
    std::vector<LabeledSample> samples;
    std::vector<std::string> class_names;
};

/// Loads a `root/<class_name>/*.pgm` tree. Class directories and files are
/// visited in lexicographic order, so sample order is deterministic. With a
/// TileSpec every image is cut into non-overlapping tiles and each tile
/// becomes one sample. Unreadable or undersized files raise DataError unless
/// skip_bad is set, in which case they are recorded in `skipped` (message per
/// file) and ignored. An entirely empty tree raises DataError.
Dataset load_dataset(const std::filesystem::path& root,
                     std::optional<TileSpec> tiles = std::nullopt,
                     bool skip_bad = false,
                     std::vector<std::string>* skipped = nullptr);

/// Writes a deterministic synthetic corpus `class_XX/sample_XXX.pgm` with one
/// texture-parameter family per class (kind cycling through checker, stripes,
/// blob-noise, gradient-noise; periods widen every 4 classes). Per-sample
/// texture seeds are drawn from a SplitMix64 stream seeded with `seed`.
void write_synth_corpus(const std::filesystem::path& out_dir, int classes,
                        int per_class, std::uint64_t seed, int size = 64);

} // namespace netsig
