#include "netsig/dataset.hpp"

#include <algorithm>
#include <stdexcept>

#include "netsig/errors.hpp"
#include "netsig/rng.hpp"

namespace netsig {

namespace fs = std::filesystem;

Dataset load_dataset(const fs::path& root, std::optional<TileSpec> tiles, bool skip_bad,
                     std::vector<std::string>* skipped) {
    if (!fs::is_directory(root))
        throw DataError(root.string() + ": not a directory");
    if (tiles && (tiles->width < 1 || tiles->height < 1))
        throw std::invalid_argument("load_dataset: tile size must be at least 1x1");

    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    std::sort(class_dirs.begin(), class_dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    Dataset dataset;
    for (const fs::path& class_dir : class_dirs) {
        const int class_id = static_cast<int>(dataset.class_names.size());
        dataset.class_names.push_back(class_dir.filename().string());

        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(class_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());

        for (const fs::path& file : files) {
            try {
                GrayImage image = load_pgm(file);
                if (tiles) {
                    std::vector<GrayImage> cut;
                    try {
                        cut = tile(image, tiles->width, tiles->height);
                    } catch (const std::invalid_argument& e) {
                        throw DataError(file.string() + ": " + e.what());
                    }
                    for (std::size_t t = 0; t < cut.size(); ++t)
                        dataset.samples.push_back({std::move(cut[t]), class_id,
                                                   file.string(), static_cast<int>(t)});
                } else {
                    dataset.samples.push_back({std::move(image), class_id, file.string(), 0});
                }
            } catch (const DataError& e) {
                if (!skip_bad) throw;
                if (skipped) skipped->push_back(e.what());
            }
        }
    }

    if (dataset.samples.empty())
        throw DataError(root.string() + ": no usable .pgm samples found (layout is " +
                        "root/<class_name>/*.pgm)");
    return dataset;
}

namespace {

struct TextureFamily {
    TextureKind kind;
    int period;
    int noise_amp;
};

TextureFamily family_for_class(int class_index) {
    // Four structurally distinct kinds; repeat with wider periods when more
    // classes are requested. Blob and lattice noise sit at opposite scales so
    // their degree profiles stay apart.
    const int generation = class_index / 4;
    switch (class_index % 4) {
        case 0: return {TextureKind::checker, 5 + 4 * generation, 25};
        case 1: return {TextureKind::stripes, 3 + 3 * generation, 25};
        case 2: return {TextureKind::blob_noise, 4 + 3 * generation, 15};
        default: return {TextureKind::gradient_noise, 12 + 5 * generation, 15};
    }
}

std::string zero_padded(int value, int digits) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < digits) s.insert(s.begin(), '0');
    return s;
}

} // namespace

void write_synth_corpus(const fs::path& out_dir, int classes, int per_class,
                        std::uint64_t seed, int size) {
    if (classes < 1 || per_class < 1)
        throw std::invalid_argument("write_synth_corpus: classes and per_class must be positive");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw DataError(out_dir.string() + ": cannot create directory: " + ec.message());

    SplitMix64 seeder(seed);
    for (int c = 0; c < classes; ++c) {
        const TextureFamily family = family_for_class(c);
        const fs::path class_dir = out_dir / ("class_" + zero_padded(c, 2));
        fs::create_directories(class_dir, ec);
        if (ec)
            throw DataError(class_dir.string() + ": cannot create directory: " + ec.message());

        for (int s = 0; s < per_class; ++s) {
            const std::uint64_t texture_seed = seeder.next();
            const GrayImage image = synth_texture(family.kind, family.period,
                                                  family.noise_amp, texture_seed, size);
            write_pgm(image, class_dir / ("sample_" + zero_padded(s, 3) + ".pgm"));
        }
    }
}

} // namespace netsig
