#include "wnav/netpbm.hpp"

#include "wnav/error.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <vector>

namespace wnav {
namespace {

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path + ": cannot open file");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

// Header scanner with byte-offset tracking for error messages.
class HeaderCursor {
public:
    HeaderCursor(const std::string& path, const std::vector<std::uint8_t>& bytes)
        : path_(path), bytes_(bytes) {}

    // Skips whitespace and '#' comments (comment runs to end of line).
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            const std::uint8_t c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_number(const char* what) {
        skip_separators();
        const std::size_t start = pos_;
        long value = 0;
        bool any = false;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            any = true;
            ++pos_;
            if (value > 1'000'000'000L) {
                fail(std::string("implausibly large ") + what, start);
            }
        }
        if (!any) {
            fail(std::string("malformed header: expected ") + what, start);
        }
        return value;
    }

    void expect_magic(const char* magic) {
        if (bytes_.size() < 2 || bytes_[0] != static_cast<std::uint8_t>(magic[0]) ||
            bytes_[1] != static_cast<std::uint8_t>(magic[1])) {
            fail(std::string("wrong magic, expected ") + magic, 0);
        }
        pos_ = 2;
    }

    // Consumes the single whitespace byte that terminates the maxval field.
    void consume_payload_separator() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            fail("malformed header: missing whitespace before pixel payload", pos_);
        }
        ++pos_;
    }

    std::size_t pos() const { return pos_; }

    [[noreturn]] void fail(const std::string& message, std::size_t offset) const {
        throw IoError(path_ + ": " + message + " (at byte offset " + std::to_string(offset) + ")");
    }

private:
    const std::string& path_;
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

struct PnmHeader {
    long width = 0;
    long height = 0;
    std::size_t payload_offset = 0;
};

PnmHeader parse_header(const char* magic, const std::string& path,
                       const std::vector<std::uint8_t>& bytes) {
    HeaderCursor cur(path, bytes);
    cur.expect_magic(magic);
    PnmHeader h;
    h.width = cur.read_number("width");
    h.height = cur.read_number("height");
    if (h.width < 1 || h.height < 1) {
        cur.fail("image dimensions must be at least 1x1", cur.pos());
    }
    const std::size_t maxval_at = cur.pos();
    const long maxval = cur.read_number("maxval");
    if (maxval != 255) {
        cur.fail("unsupported maxval " + std::to_string(maxval) + ", expected 255", maxval_at);
    }
    cur.consume_payload_separator();
    h.payload_offset = cur.pos();
    return h;
}

void check_payload(const std::string& path, const std::vector<std::uint8_t>& bytes,
                   const PnmHeader& h, std::size_t bytes_per_pixel) {
    const std::size_t expected =
        static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height) * bytes_per_pixel;
    const std::size_t got = bytes.size() - h.payload_offset;
    if (got < expected) {
        throw IoError(path + ": truncated pixel payload: expected " + std::to_string(expected) +
                      " bytes, got " + std::to_string(got) + " (at byte offset " +
                      std::to_string(h.payload_offset) + ")");
    }
}

void write_header(std::ofstream& out, const char* magic, Eigen::Index width, Eigen::Index height) {
    out << magic << "\n" << width << " " << height << "\n255\n";
}

}  // namespace

RgbImage read_ppm(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    const PnmHeader h = parse_header("P6", path, bytes);
    check_payload(path, bytes, h, 3);

    RgbImage image;
    image.r.resize(h.height, h.width);
    image.g.resize(h.height, h.width);
    image.b.resize(h.height, h.width);
    const std::uint8_t* p = bytes.data() + h.payload_offset;
    for (Eigen::Index i = 0; i < h.height; ++i) {
        for (Eigen::Index j = 0; j < h.width; ++j) {
            image.r(i, j) = *p++;
            image.g(i, j) = *p++;
            image.b(i, j) = *p++;
        }
    }
    return image;
}

void write_ppm(const std::string& path, const RgbImage& image) {
    if (image.g.rows() != image.height() || image.b.rows() != image.height() ||
        image.g.cols() != image.width() || image.b.cols() != image.width()) {
        throw ContractError("write_ppm: color planes disagree on dimensions");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path + ": cannot open file for writing");
    }
    write_header(out, "P6", image.width(), image.height());
    for (Eigen::Index i = 0; i < image.height(); ++i) {
        for (Eigen::Index j = 0; j < image.width(); ++j) {
            const char px[3] = {static_cast<char>(image.r(i, j)), static_cast<char>(image.g(i, j)),
                                static_cast<char>(image.b(i, j))};
            out.write(px, 3);
        }
    }
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

GrayImage read_pgm(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    const PnmHeader h = parse_header("P5", path, bytes);
    check_payload(path, bytes, h, 1);

    GrayImage image(h.height, h.width);
    const std::uint8_t* p = bytes.data() + h.payload_offset;
    for (Eigen::Index i = 0; i < h.height; ++i) {
        for (Eigen::Index j = 0; j < h.width; ++j) {
            image(i, j) = *p++;
        }
    }
    return image;
}

void write_pgm(const std::string& path, const GrayImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path + ": cannot open file for writing");
    }
    write_header(out, "P5", image.cols(), image.rows());
    out.write(reinterpret_cast<const char*>(image.data()),
              static_cast<std::streamsize>(image.size()));
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

}  // namespace wnav
