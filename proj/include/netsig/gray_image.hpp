#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace netsig {

/// Grayscale raster with integer intensities in [0, max_level], stored
/// row-major. max_level is the L declared by the source (PGM maxval), not
/// the maximum value actually present.
struct GrayImage {
    int width = 0;
    int height = 0;
    int max_level = 255;
    std::vector<std::uint16_t> data;

    int pixel_count() const { return width * height; }

    std::uint16_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint16_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const GrayImage&) const = default;
};

enum class PgmFormat { ascii, binary }; // P2 / P5

/// Parses a PGM (P2 or P5) byte stream. `origin` names the source in error
/// messages. Malformed input raises DataError with the offending byte offset;
/// maxval above 65535 raises DataError (unsupported).
GrayImage parse_pgm(std::string_view bytes, const std::string& origin);

GrayImage load_pgm(const std::filesystem::path& path);

/// Encodes as P2 or P5. Samples wider than 8 bits are written as two bytes,
/// big-endian, per the PNM convention.
std::string encode_pgm(const GrayImage& image, PgmFormat format = PgmFormat::binary);

void write_pgm(const GrayImage& image, const std::filesystem::path& path,
               PgmFormat format = PgmFormat::binary);

/// Cuts non-overlapping tile_w x tile_h tiles, scanned row-major from the
/// top-left corner. Partial tiles at the right/bottom edges are discarded.
std::vector<GrayImage> tile(const GrayImage& image, int tile_w, int tile_h);

enum class TextureKind { checker, stripes, blob_noise, gradient_noise };

TextureKind texture_kind_from_name(std::string_view name);
std::string_view texture_kind_name(TextureKind kind);

/// Deterministic synthetic texture, max_level 255. Same arguments produce
/// identical pixels on every platform (SplitMix64 noise, no libm calls).
/// noise_amp adds uniform integer noise in [-noise_amp, +noise_amp].
GrayImage synth_texture(TextureKind kind, int period, int noise_amp,
                        std::uint64_t seed, int size);

} // namespace netsig
