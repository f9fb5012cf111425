#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "netsig/errors.hpp"
#include "netsig/gray_image.hpp"
#include "netsig/rng.hpp"
#include "oracles.hpp"

using namespace netsig;
namespace fs = std::filesystem;

namespace {

std::string p5_bytes(const std::string& header, std::initializer_list<int> pixels) {
    std::string s = header;
    for (int p : pixels) s.push_back(static_cast<char>(p));
    return s;
}

} // namespace

TEST_CASE("parse_pgm reads a minimal P5 stream") {
    const auto img = parse_pgm(p5_bytes("P5 2 2 255\n", {0, 255, 7, 9}), "test");
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.max_level == 255);
    CHECK(img.data == std::vector<std::uint16_t>{0, 255, 7, 9});
}

TEST_CASE("parse_pgm reads ASCII P2 with comments") {
    const std::string text = "P2\n# a comment\n3 3\n255\n0 0 0\n0 0 0\n0 0 0\n";
    const auto img = parse_pgm(text, "test");
    CHECK(img.width == 3);
    CHECK(img.height == 3);
    CHECK(img.max_level == 255);
    for (auto v : img.data) CHECK(v == 0);
}

TEST_CASE("parse_pgm rejects malformed input with byte offsets") {
    SUBCASE("bad magic") {
        CHECK_THROWS_WITH_AS(parse_pgm("Q5 2 2 255\n", "f"), doctest::Contains("byte 0"),
                             DataError);
    }
    SUBCASE("truncated binary payload") {
        CHECK_THROWS_AS(parse_pgm(p5_bytes("P5 2 2 255\n", {0, 255, 7}), "f"), DataError);
    }
    SUBCASE("truncated ascii payload") {
        CHECK_THROWS_AS(parse_pgm("P2\n2 2\n255\n0 1 2\n", "f"), DataError);
    }
    SUBCASE("missing maxval") {
        CHECK_THROWS_AS(parse_pgm("P2\n2 2\n", "f"), DataError);
    }
    SUBCASE("sample above maxval") {
        CHECK_THROWS_AS(parse_pgm("P2\n1 1\n10\n11\n", "f"), DataError);
        CHECK_THROWS_AS(parse_pgm(p5_bytes("P5 1 1 10\n", {11}), "f"), DataError);
    }
    SUBCASE("zero dimensions") {
        CHECK_THROWS_AS(parse_pgm("P2\n0 2\n255\n", "f"), DataError);
    }
    SUBCASE("maxval above 65535 is unsupported") {
        CHECK_THROWS_WITH_AS(parse_pgm("P2\n1 1\n70000\n0\n", "f"),
                             doctest::Contains("unsupported"), DataError);
    }
    SUBCASE("zero maxval") {
        CHECK_THROWS_AS(parse_pgm("P2\n1 1\n0\n0\n", "f"), DataError);
    }
}

TEST_CASE("parse_pgm reads 16-bit P5 samples big-endian") {
    // maxval 1000 -> two bytes per sample
    const auto img = parse_pgm(p5_bytes("P5 2 1 1000\n", {0x03, 0xE8, 0x00, 0x2A}), "f");
    CHECK(img.max_level == 1000);
    CHECK(img.data == std::vector<std::uint16_t>{1000, 42});
}

TEST_CASE("PGM encode/parse round-trips random images") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = 1 + static_cast<int>(rng.next_below(9));
        const int h = 1 + static_cast<int>(rng.next_below(9));
        const int levels[] = {1, 255, 1000, 65535};
        const int max_level = levels[rng.next_below(4)];
        const auto img = oracles::random_image(rng, w, h, max_level);
        const auto format = (trial % 2) ? PgmFormat::ascii : PgmFormat::binary;
        const auto round = parse_pgm(encode_pgm(img, format), "round-trip");
        CHECK(round == img);
    }
}

TEST_CASE("load_pgm and write_pgm round-trip through the filesystem") {
    const fs::path path = fs::temp_directory_path() / "netsig_imagery_roundtrip.pgm";
    SplitMix64 rng(3);
    const auto img = oracles::random_image(rng, 7, 5);
    write_pgm(img, path);
    CHECK(load_pgm(path) == img);
    fs::remove(path);

    CHECK_THROWS_AS(load_pgm(path), DataError); // now missing
}

TEST_CASE("tile cuts non-overlapping blocks and discards partial edges") {
    GrayImage img;
    SUBCASE("512x512 into 128x128 gives 16 tiles") {
        SplitMix64 rng(5);
        img = oracles::random_image(rng, 512, 512);
        CHECK(tile(img, 128, 128).size() == 16);
    }
    SUBCASE("746x538 into 128x128 gives 20 tiles (5x4 grid)") {
        img.width = 746;
        img.height = 538;
        img.data.assign(static_cast<std::size_t>(746) * 538, 0);
        CHECK(tile(img, 128, 128).size() == 20);
    }
    SUBCASE("identity tiling") {
        SplitMix64 rng(6);
        img = oracles::random_image(rng, 128, 128);
        const auto tiles = tile(img, 128, 128);
        REQUIRE(tiles.size() == 1);
        CHECK(tiles[0] == img);
    }
    SUBCASE("tile larger than image") {
        img.width = 64;
        img.height = 64;
        img.data.assign(64 * 64, 0);
        CHECK_THROWS_AS(tile(img, 65, 64), std::invalid_argument);
        CHECK_THROWS_AS(tile(img, 64, 65), std::invalid_argument);
    }
}

TEST_CASE("tile count and content match the source for random shapes") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const int w = 4 + static_cast<int>(rng.next_below(40));
        const int h = 4 + static_cast<int>(rng.next_below(40));
        const int tw = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(w)));
        const int th = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(h)));
        const auto img = oracles::random_image(rng, w, h);
        const auto tiles = tile(img, tw, th);
        REQUIRE(tiles.size() == static_cast<std::size_t>((w / tw) * (h / th)));
        // Every tile pixel must equal the source pixel it was cut from.
        const int nx = w / tw;
        bool all_match = true;
        for (std::size_t t = 0; t < tiles.size(); ++t) {
            const int tx = static_cast<int>(t) % nx;
            const int ty = static_cast<int>(t) / nx;
            CHECK(tiles[t].max_level == img.max_level);
            for (int y = 0; y < th; ++y)
                for (int x = 0; x < tw; ++x)
                    all_match &= tiles[t].at(x, y) == img.at(tx * tw + x, ty * th + y);
        }
        CHECK(all_match);
    }
}

TEST_CASE("synth_texture checker with no noise is an exact checkerboard") {
    const auto img = synth_texture(TextureKind::checker, 4, 0, 0, 8);
    REQUIRE(img.width == 8);
    REQUIRE(img.height == 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            const int expected = ((x / 4 + y / 4) % 2) ? 255 : 0;
            CHECK(img.at(x, y) == expected);
        }
}

TEST_CASE("synth_texture is a pure function of its arguments") {
    for (TextureKind kind : {TextureKind::checker, TextureKind::stripes,
                             TextureKind::blob_noise, TextureKind::gradient_noise}) {
        const auto a = synth_texture(kind, 5, 20, 42, 16);
        const auto b = synth_texture(kind, 5, 20, 42, 16);
        CHECK(a == b);
    }
}

TEST_CASE("synth_texture stripes: different seeds differ but share the histogram family") {
    const auto a = synth_texture(TextureKind::stripes, 2, 30, 1, 64);
    const auto b = synth_texture(TextureKind::stripes, 2, 30, 2, 64);
    CHECK(a.data != b.data);
    // Noise amplitude 30 cannot move a 0/255 stripe across the midpoint, so
    // the dark/bright split is exactly half in both.
    auto dark_count = [](const GrayImage& img) {
        int dark = 0;
        for (auto v : img.data) dark += v < 128;
        return dark;
    };
    CHECK(dark_count(a) == 64 * 64 / 2);
    CHECK(dark_count(b) == 64 * 64 / 2);
}

TEST_CASE("synth_texture outputs stay within [0, 255]") {
    SplitMix64 rng(8);
    for (TextureKind kind : {TextureKind::blob_noise, TextureKind::gradient_noise}) {
        const auto img = synth_texture(kind, 6, 40, rng.next(), 32);
        CHECK(img.max_level == 255);
        for (auto v : img.data) CHECK(v <= 255);
    }
}

TEST_CASE("synth_texture validates arguments") {
    CHECK_THROWS_AS(synth_texture(TextureKind::checker, 4, 0, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(synth_texture(TextureKind::checker, 0, 0, 0, 16), std::invalid_argument);
    CHECK_THROWS_AS(synth_texture(TextureKind::checker, 4, -1, 0, 16), std::invalid_argument);
}

TEST_CASE("texture kind names round-trip") {
    for (TextureKind kind : {TextureKind::checker, TextureKind::stripes,
                             TextureKind::blob_noise, TextureKind::gradient_noise})
        CHECK(texture_kind_from_name(texture_kind_name(kind)) == kind);
    CHECK_THROWS_AS(texture_kind_from_name("marble"), std::invalid_argument);
}
