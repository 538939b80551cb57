#include "wnav/audio_io.hpp"
#include "wnav/calibration.hpp"
#include "wnav/error.hpp"
#include "wnav/melmat_io.hpp"
#include "wnav/netpbm.hpp"

#include "support/temp_dir.hpp"

#include <doctest.h>

#include <cstdint>
#include <random>
#include <string>

using namespace wnav;
using wnav::testing::TempDir;

namespace {

// Minimal hand-rolled RIFF writer so the reader is checked against raw bytes,
// not against itself.
std::string wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                      std::uint16_t bits, const std::vector<std::int16_t>& samples) {
    std::string data;
    for (const std::int16_t s : samples) {
        data.push_back(static_cast<char>(s & 0xFF));
        data.push_back(static_cast<char>((s >> 8) & 0xFF));
    }
    const auto le16 = [](std::string& out, std::uint16_t v) {
        out.push_back(static_cast<char>(v & 0xFF));
        out.push_back(static_cast<char>(v >> 8));
    };
    const auto le32 = [](std::string& out, std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    };

    std::string fmt;
    le16(fmt, format);
    le16(fmt, channels);
    le32(fmt, rate);
    le32(fmt, rate * channels * bits / 8);
    le16(fmt, static_cast<std::uint16_t>(channels * bits / 8));
    le16(fmt, bits);

    std::string body = "WAVE";
    body += "fmt ";
    std::string size4;
    le32(size4, static_cast<std::uint32_t>(fmt.size()));
    body += size4 + fmt;
    body += "data";
    size4.clear();
    le32(size4, static_cast<std::uint32_t>(data.size()));
    body += size4 + data;

    std::string out = "RIFF";
    size4.clear();
    le32(size4, static_cast<std::uint32_t>(body.size()));
    out += size4 + body;
    return out;
}

}  // namespace

TEST_SUITE("media_io") {

TEST_CASE("read_ppm decodes a single pixel") {
    TempDir dir;
    const auto path = dir.write("one.ppm", std::string("P6\n1 1\n255\n") + std::string("\xFF\x00\x00", 3));
    const RgbImage image = read_ppm(path);
    CHECK(image.width() == 1);
    CHECK(image.height() == 1);
    CHECK(image.r(0, 0) == 255);
    CHECK(image.g(0, 0) == 0);
    CHECK(image.b(0, 0) == 0);
}

TEST_CASE("ppm round trip is byte identical") {
    TempDir dir;
    std::mt19937 rng(7);
    RgbImage image;
    image.r.resize(13, 9);
    image.g.resize(13, 9);
    image.b.resize(13, 9);
    for (Eigen::Index i = 0; i < 13; ++i) {
        for (Eigen::Index j = 0; j < 9; ++j) {
            image.r(i, j) = static_cast<std::uint8_t>(rng());
            image.g(i, j) = static_cast<std::uint8_t>(rng());
            image.b(i, j) = static_cast<std::uint8_t>(rng());
        }
    }
    const auto first = dir.file("a.ppm");
    const auto second = dir.file("b.ppm");
    write_ppm(first, image);
    write_ppm(second, read_ppm(first));
    CHECK(TempDir::slurp(first) == TempDir::slurp(second));
}

TEST_CASE("read_ppm rejects the wrong magic") {
    TempDir dir;
    const auto path = dir.write("gray.ppm", std::string("P5\n1 1\n255\n") + "\x10");
    CHECK_THROWS_WITH_AS(read_ppm(path), doctest::Contains("wrong magic"), IoError);
}

TEST_CASE("read_ppm reports truncation with byte counts") {
    TempDir dir;
    const auto path = dir.write("short.ppm", std::string("P6\n2 2\n255\n") + "\x01\x02\x03");
    CHECK_THROWS_WITH_AS(read_ppm(path), doctest::Contains("expected 12 bytes, got 3"), IoError);
}

TEST_CASE("read_ppm rejects maxval other than 255") {
    TempDir dir;
    const auto path = dir.write("wide.ppm", "P6\n1 1\n65535\n??????");
    CHECK_THROWS_WITH_AS(read_ppm(path), doctest::Contains("maxval 65535"), IoError);
    CHECK_THROWS_WITH_AS(read_ppm(path), doctest::Contains("byte offset"), IoError);
}

TEST_CASE("read_ppm tolerates comments and extra whitespace") {
    TempDir dir;
    const auto path =
        dir.write("comment.ppm", std::string("P6 # rgb\n# full line\n  1\t1\n255\n") + "abc");
    const RgbImage image = read_ppm(path);
    CHECK(image.r(0, 0) == 'a');
    CHECK(image.b(0, 0) == 'c');
}

TEST_CASE("read_pgm decodes two pixels") {
    TempDir dir;
    const auto path = dir.write("two.pgm", std::string("P5\n2 1\n255\n") + '\x00' + '\xFF');
    const GrayImage image = read_pgm(path);
    CHECK(image.rows() == 1);
    CHECK(image.cols() == 2);
    CHECK(image(0, 0) == 0);
    CHECK(image(0, 1) == 255);
}

TEST_CASE("pgm round trip is byte identical") {
    TempDir dir;
    std::mt19937 rng(11);
    GrayImage image(17, 5);
    for (Eigen::Index i = 0; i < image.size(); ++i) {
        image.data()[i] = static_cast<std::uint8_t>(rng());
    }
    const auto first = dir.file("a.pgm");
    const auto second = dir.file("b.pgm");
    write_pgm(first, image);
    write_pgm(second, read_pgm(first));
    CHECK(TempDir::slurp(first) == TempDir::slurp(second));
}

TEST_CASE("read_pgm reports truncation") {
    TempDir dir;
    const auto path = dir.write("short.pgm", std::string("P5\n3 2\n255\n") + "ab");
    CHECK_THROWS_WITH_AS(read_pgm(path), doctest::Contains("expected 6 bytes, got 2"), IoError);
}

TEST_CASE("read_wav scales 16-bit samples by 1/32768") {
    TempDir dir;
    const auto path = dir.write("tone.wav", wav_bytes(1, 1, 8000, 16, {16384, -32768, 32767}));
    const AudioSignal signal = read_wav(path);
    CHECK(signal.sample_rate == 8000);
    REQUIRE(signal.samples.size() == 3);
    CHECK(signal.samples(0) == 0.5);
    CHECK(signal.samples(1) == -1.0);
    CHECK(signal.samples(2) == 32767.0 / 32768.0);
}

TEST_CASE("wav decoding is linear in the raw value") {
    TempDir dir;
    std::mt19937 rng(3);
    std::vector<std::int16_t> raw(257);
    for (auto& v : raw) v = static_cast<std::int16_t>(rng());
    raw[0] = -32768;
    raw[1] = 32767;
    raw[2] = 0;
    const auto path = dir.write("rand.wav", wav_bytes(1, 1, 16000, 16, raw));
    const AudioSignal signal = read_wav(path);
    REQUIRE(signal.samples.size() == static_cast<Eigen::Index>(raw.size()));
    for (std::size_t k = 0; k < raw.size(); ++k) {
        CHECK(signal.samples(static_cast<Eigen::Index>(k)) == raw[k] / 32768.0);
        CHECK(signal.samples(static_cast<Eigen::Index>(k)) >= -1.0);
        CHECK(signal.samples(static_cast<Eigen::Index>(k)) < 1.0);
    }
}

TEST_CASE("read_wav rejects stereo, non-PCM and non-16-bit input") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(read_wav(dir.write("st.wav", wav_bytes(1, 2, 8000, 16, {0, 0}))),
                         doctest::Contains("mono required"), IoError);
    CHECK_THROWS_WITH_AS(read_wav(dir.write("f.wav", wav_bytes(3, 1, 8000, 16, {0}))),
                         doctest::Contains("non-PCM"), IoError);
    CHECK_THROWS_WITH_AS(read_wav(dir.write("b8.wav", wav_bytes(1, 1, 8000, 8, {0}))),
                         doctest::Contains("16-bit"), IoError);
}

TEST_CASE("read_wav skips unknown chunks") {
    TempDir dir;
    std::string bytes = wav_bytes(1, 1, 8000, 16, {16384});
    // Splice a LIST chunk between fmt and data.
    const std::string list = std::string("LIST\x04\x00\x00\x00INFO", 12);
    bytes.insert(36, list);
    const std::uint32_t riff_size = static_cast<std::uint32_t>(bytes.size() - 8);
    for (int i = 0; i < 4; ++i) bytes[4 + i] = static_cast<char>((riff_size >> (8 * i)) & 0xFF);
    const AudioSignal signal = read_wav(dir.write("list.wav", bytes));
    REQUIRE(signal.samples.size() == 1);
    CHECK(signal.samples(0) == 0.5);
}

TEST_CASE("read_calibration parses required and optional keys") {
    TempDir dir;
    const auto path = dir.write("rig.txt",
                                "# bench rig\n"
                                "focal_px = 300\n"
                                "baseline_mm = 40.85\n"
                                "cx = 160\n"
                                "cy = 120\n");
    const CameraRig rig = read_calibration(path);
    CHECK(rig.focal_px == 300.0);
    CHECK(rig.baseline_mm == 40.85);
    CHECK(rig.cx == 160.0);
    CHECK(rig.cy == 120.0);
    CHECK(rig.distortion == std::array<double, 4>{0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("read_calibration reads distortion when present") {
    TempDir dir;
    const auto path = dir.write("rig.txt",
                                "focal_px = 296.01142\nbaseline_mm = 40.85256\n"
                                "cx = 155.75326\ncy = 114.41865\n"
                                "k1 = 0.02002\nk2 = -0.0735\np1 = -0.00172\np2 = -0.01327\n");
    const CameraRig rig = read_calibration(path);
    CHECK(rig.distortion[0] == 0.02002);
    CHECK(rig.distortion[3] == -0.01327);
}

TEST_CASE("read_calibration rejects bad input") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(
        read_calibration(dir.write("m.txt", "focal_px = 300\ncx = 160\ncy = 120\n")),
        doctest::Contains("missing required key 'baseline_mm'"), IoError);
    CHECK_THROWS_WITH_AS(
        read_calibration(dir.write(
            "neg.txt", "focal_px = 300\nbaseline_mm = -1\ncx = 160\ncy = 120\n")),
        doctest::Contains("baseline must be positive"), IoError);
    CHECK_THROWS_WITH_AS(
        read_calibration(dir.write(
            "txt.txt", "focal_px = abc\nbaseline_mm = 40\ncx = 160\ncy = 120\n")),
        doctest::Contains("non-numeric value"), IoError);
}

TEST_CASE("read_template parses the documented example") {
    TempDir dir;
    const auto path = dir.write("t.melmat", "MELMAT 1 2\n0.5 1.5\n");
    const MelMatrix m = read_template(path);
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == 0.5);
    CHECK(m(0, 1) == 1.5);
}

TEST_CASE("template write/read round trip is value exact") {
    TempDir dir;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uniform(-20.0, 20.0);
    MelMatrix m(22, 17);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = uniform(rng);
    }
    m(0, 0) = -9.210340371976182;  // a value with a long decimal tail
    const auto path = dir.file("t.melmat");
    write_template(path, m);
    const MelMatrix back = read_template(path);
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("read_template rejects dimension mismatches") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(read_template(dir.write("wide.melmat", "MELMAT 1 2\n0.5 1.5 2.5\n")),
                         doctest::Contains("wrong element count"), IoError);
    CHECK_THROWS_WITH_AS(read_template(dir.write("narrow.melmat", "MELMAT 1 3\n0.5 1.5\n")),
                         doctest::Contains("wrong element count"), IoError);
    CHECK_THROWS_WITH_AS(read_template(dir.write("rows.melmat", "MELMAT 2 2\n0.5 1.5\n")),
                         doctest::Contains("body ended after 1 rows"), IoError);
    CHECK_THROWS_WITH_AS(read_template(dir.write("magic.melmat", "MELMAX 1 1\n0\n")),
                         doctest::Contains("malformed header"), IoError);
}

TEST_CASE("load_template_library orders entries and checks consistency") {
    TempDir dir;
    write_template(dir.file("stop.melmat"), MelMatrix::Constant(3, 4, 1.0));
    write_template(dir.file("back.melmat"), MelMatrix::Constant(3, 5, 2.0));
    write_template(dir.file("front.melmat"), MelMatrix::Constant(3, 6, 3.0));
    const TemplateLibrary library = load_template_library(dir.path().string());
    REQUIRE(library.entries.size() == 3);
    CHECK(library.entries[0].label == "back");
    CHECK(library.entries[1].label == "front");
    CHECK(library.entries[2].label == "stop");

    write_template(dir.file("odd.melmat"), MelMatrix::Constant(4, 4, 1.0));
    CHECK_THROWS_WITH_AS(load_template_library(dir.path().string()),
                         doctest::Contains("channel count"), IoError);
}

TEST_CASE("load_template_library rejects an empty directory") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(load_template_library(dir.path().string()),
                         doctest::Contains("no *.melmat templates"), IoError);
}

}  // TEST_SUITE
