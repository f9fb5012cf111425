#include "netsig/gray_image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "netsig/errors.hpp"
#include "netsig/rng.hpp"

namespace netsig {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, std::size_t offset,
                             const std::string& what) {
    throw DataError(origin + ": parse error at byte " + std::to_string(offset) +
                    ": " + what);
}

// Cursor over the PGM header. Skips whitespace and '#' comments between
// tokens and tracks the byte offset for error messages.
struct HeaderCursor {
    std::string_view bytes;
    std::size_t pos = 0;
    const std::string& origin;

    void skip_separators() {
        while (pos < bytes.size()) {
            unsigned char c = bytes[pos];
            if (std::isspace(c)) {
                ++pos;
            } else if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                return;
            }
        }
    }

    long next_int(const char* field) {
        skip_separators();
        if (pos >= bytes.size())
            parse_fail(origin, pos, std::string("unexpected end of file reading ") + field);
        if (!std::isdigit(static_cast<unsigned char>(bytes[pos])))
            parse_fail(origin, pos, std::string("expected integer for ") + field);
        long value = 0;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1'000'000'000L)
                parse_fail(origin, pos, std::string(field) + " out of range");
            ++pos;
        }
        return value;
    }
};

} // namespace

GrayImage parse_pgm(std::string_view bytes, const std::string& origin) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        parse_fail(origin, 0, "not a P2/P5 PGM (bad magic)");
    const bool binary = bytes[1] == '5';

    HeaderCursor cur{bytes, 2, origin};
    const long width = cur.next_int("width");
    const long height = cur.next_int("height");
    const long maxval = cur.next_int("maxval");

    if (width < 1 || height < 1)
        parse_fail(origin, cur.pos, "width and height must be at least 1");
    if (maxval < 1)
        parse_fail(origin, cur.pos, "maxval must be at least 1");
    if (maxval > 65535)
        throw DataError(origin + ": unsupported maxval " + std::to_string(maxval) +
                        " (limit 65535)");

    GrayImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    img.max_level = static_cast<int>(maxval);
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    img.data.resize(n);

    if (binary) {
        // Exactly one whitespace byte separates the header from the payload.
        if (cur.pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[cur.pos])))
            parse_fail(origin, cur.pos, "expected single whitespace before binary payload");
        std::size_t p = cur.pos + 1;
        const int bytes_per_sample = maxval > 255 ? 2 : 1;
        if (bytes.size() - p < n * bytes_per_sample)
            parse_fail(origin, bytes.size(), "truncated pixel payload");
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t v;
            if (bytes_per_sample == 1) {
                v = static_cast<std::uint8_t>(bytes[p]);
                p += 1;
            } else {
                v = (static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[p])) << 8) |
                    static_cast<std::uint8_t>(bytes[p + 1]);
                p += 2;
            }
            if (v > static_cast<std::uint32_t>(maxval))
                parse_fail(origin, p - bytes_per_sample,
                           "sample value " + std::to_string(v) + " exceeds maxval");
            img.data[i] = static_cast<std::uint16_t>(v);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t at = cur.pos;
            long v = cur.next_int("sample");
            if (v > maxval)
                parse_fail(origin, at, "sample value " + std::to_string(v) + " exceeds maxval");
            img.data[i] = static_cast<std::uint16_t>(v);
        }
    }
    return img;
}

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pgm(buf.str(), path.string());
}

std::string encode_pgm(const GrayImage& image, PgmFormat format) {
    std::string out;
    const std::size_t n = image.data.size();
    if (format == PgmFormat::binary) {
        out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
              "\n" + std::to_string(image.max_level) + "\n";
        const bool wide = image.max_level > 255;
        out.reserve(out.size() + n * (wide ? 2 : 1));
        for (std::uint16_t v : image.data) {
            if (wide) out.push_back(static_cast<char>(v >> 8));
            out.push_back(static_cast<char>(v & 0xFF));
        }
    } else {
        std::ostringstream s;
        s << "P2\n" << image.width << " " << image.height << "\n" << image.max_level << "\n";
        for (int y = 0; y < image.height; ++y) {
            for (int x = 0; x < image.width; ++x) {
                if (x) s << ' ';
                s << image.at(x, y);
            }
            s << '\n';
        }
        out = s.str();
    }
    return out;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path, PgmFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError(path.string() + ": cannot open file for writing");
    const std::string bytes = encode_pgm(image, format);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw DataError(path.string() + ": write failed");
}

std::vector<GrayImage> tile(const GrayImage& image, int tile_w, int tile_h) {
    if (tile_w < 1 || tile_h < 1)
        throw std::invalid_argument("tile: tile size must be at least 1x1");
    if (tile_w > image.width || tile_h > image.height)
        throw std::invalid_argument("tile: tile size " + std::to_string(tile_w) + "x" +
                                    std::to_string(tile_h) + " exceeds image " +
                                    std::to_string(image.width) + "x" +
                                    std::to_string(image.height));
    const int nx = image.width / tile_w;
    const int ny = image.height / tile_h;
    std::vector<GrayImage> tiles;
    tiles.reserve(static_cast<std::size_t>(nx) * ny);
    for (int ty = 0; ty < ny; ++ty) {
        for (int tx = 0; tx < nx; ++tx) {
            GrayImage t;
            t.width = tile_w;
            t.height = tile_h;
            t.max_level = image.max_level;
            t.data.resize(static_cast<std::size_t>(tile_w) * tile_h);
            for (int y = 0; y < tile_h; ++y) {
                const std::uint16_t* src = &image.data[static_cast<std::size_t>(ty * tile_h + y) *
                                                           image.width +
                                                       static_cast<std::size_t>(tx) * tile_w];
                std::copy(src, src + tile_w, &t.data[static_cast<std::size_t>(y) * tile_w]);
            }
            tiles.push_back(std::move(t));
        }
    }
    return tiles;
}

TextureKind texture_kind_from_name(std::string_view name) {
    if (name == "checker") return TextureKind::checker;
    if (name == "stripes") return TextureKind::stripes;
    if (name == "blob-noise") return TextureKind::blob_noise;
    if (name == "gradient-noise") return TextureKind::gradient_noise;
    throw std::invalid_argument("unknown texture kind: " + std::string(name));
}

std::string_view texture_kind_name(TextureKind kind) {
    switch (kind) {
        case TextureKind::checker: return "checker";
        case TextureKind::stripes: return "stripes";
        case TextureKind::blob_noise: return "blob-noise";
        case TextureKind::gradient_noise: return "gradient-noise";
    }
    return "?";
}

namespace {

constexpr int kSynthMaxLevel = 255;

int clamp_level(double v) {
    if (v <= 0.0) return 0;
    if (v >= kSynthMaxLevel) return kSynthMaxLevel;
    // llround on a finite double is platform-stable.
    return static_cast<int>(std::llround(v));
}

// Polynomial bump (1 - t^2)^2 on t in [0,1]; avoids exp() so pixel values
// never depend on libm rounding.
double bump(double t2) {
    const double u = 1.0 - t2;
    return u * u;
}

std::vector<double> blob_canvas(int size, int period, SplitMix64& rng) {
    std::vector<double> canvas(static_cast<std::size_t>(size) * size, 128.0);
    const int blobs = std::max(4, (size / std::max(1, period)) * 2);
    for (int b = 0; b < blobs; ++b) {
        const double cx = rng.next_double() * size;
        const double cy = rng.next_double() * size;
        const double radius = period * (0.75 + 1.25 * rng.next_double());
        const double amp = (rng.next_double() * 2.0 - 1.0) * 140.0;
        const double r2 = radius * radius;
        const int x0 = std::max(0, static_cast<int>(cx - radius) - 1);
        const int x1 = std::min(size - 1, static_cast<int>(cx + radius) + 1);
        const int y0 = std::max(0, static_cast<int>(cy - radius) - 1);
        const int y1 = std::min(size - 1, static_cast<int>(cy + radius) + 1);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - cx;
                const double dy = y - cy;
                const double t2 = (dx * dx + dy * dy) / r2;
                if (t2 < 1.0)
                    canvas[static_cast<std::size_t>(y) * size + x] += amp * bump(t2);
            }
        }
    }
    return canvas;
}

std::vector<double> value_noise_canvas(int size, int period, SplitMix64& rng) {
    const int cell = std::max(1, period);
    const int grid = size / cell + 2;
    std::vector<double> lattice(static_cast<std::size_t>(grid) * grid);
    for (double& v : lattice) v = rng.next_double();

    auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };

    std::vector<double> canvas(static_cast<std::size_t>(size) * size);
    for (int y = 0; y < size; ++y) {
        const int gy = y / cell;
        const double ty = smooth(static_cast<double>(y % cell) / cell);
        for (int x = 0; x < size; ++x) {
            const int gx = x / cell;
            const double tx = smooth(static_cast<double>(x % cell) / cell);
            const double v00 = lattice[static_cast<std::size_t>(gy) * grid + gx];
            const double v10 = lattice[static_cast<std::size_t>(gy) * grid + gx + 1];
            const double v01 = lattice[static_cast<std::size_t>(gy + 1) * grid + gx];
            const double v11 = lattice[static_cast<std::size_t>(gy + 1) * grid + gx + 1];
            const double top = v00 + (v10 - v00) * tx;
            const double bot = v01 + (v11 - v01) * tx;
            canvas[static_cast<std::size_t>(y) * size + x] =
                (top + (bot - top) * ty) * kSynthMaxLevel;
        }
    }
    return canvas;
}

} // namespace

GrayImage synth_texture(TextureKind kind, int period, int noise_amp,
                        std::uint64_t seed, int size) {
    if (size < 8)
        throw std::invalid_argument("synth_texture: size must be at least 8");
    if (period < 1)
        throw std::invalid_argument("synth_texture: period must be at least 1");
    if (noise_amp < 0)
        throw std::invalid_argument("synth_texture: noise_amp must be non-negative");

    SplitMix64 rng(seed);
    const std::size_t n = static_cast<std::size_t>(size) * size;
    std::vector<double> canvas;

    switch (kind) {
        case TextureKind::checker:
            canvas.resize(n);
            for (int y = 0; y < size; ++y)
                for (int x = 0; x < size; ++x)
                    canvas[static_cast<std::size_t>(y) * size + x] =
                        ((x / period + y / period) % 2) ? kSynthMaxLevel : 0;
            break;
        case TextureKind::stripes:
            canvas.resize(n);
            for (int y = 0; y < size; ++y)
                for (int x = 0; x < size; ++x)
                    canvas[static_cast<std::size_t>(y) * size + x] =
                        ((x / period) % 2) ? kSynthMaxLevel : 0;
            break;
        case TextureKind::blob_noise:
            canvas = blob_canvas(size, period, rng);
            break;
        case TextureKind::gradient_noise:
            canvas = value_noise_canvas(size, period, rng);
            break;
    }

    GrayImage img;
    img.width = size;
    img.height = size;
    img.max_level = kSynthMaxLevel;
    img.data.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = canvas[i];
        if (noise_amp > 0)
            v += (rng.next_double() * 2.0 - 1.0) * noise_amp;
        img.data[i] = static_cast<std::uint16_t>(clamp_level(v));
    }
    return img;
}

} // namespace netsig
