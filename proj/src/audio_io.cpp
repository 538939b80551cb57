#include "wnav/audio_io.hpp"

#include "wnav/error.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace wnav {
namespace {

std::uint32_t le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

AudioSignal read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path + ": cannot open file");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw IoError(path + ": not a RIFF/WAVE file");
    }

    bool have_fmt = false;
    std::uint16_t format_code = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    const std::uint8_t* data_chunk = nullptr;
    std::uint32_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint8_t* p = bytes.data() + pos;
        const std::uint32_t chunk_size = le32(p + 4);
        if (pos + 8 + chunk_size > bytes.size()) {
            throw IoError(path + ": truncated chunk '" + std::string(p, p + 4) + "'");
        }
        if (std::memcmp(p, "fmt ", 4) == 0) {
            if (chunk_size < 16) {
                throw IoError(path + ": fmt chunk too small");
            }
            format_code = le16(p + 8);
            channels = le16(p + 10);
            sample_rate = le32(p + 12);
            bits = le16(p + 22);
            have_fmt = true;
        } else if (std::memcmp(p, "data", 4) == 0) {
            data_chunk = p + 8;
            data_size = chunk_size;
        }
        pos += 8 + chunk_size + (chunk_size & 1);  // chunks are word-aligned
    }

    if (!have_fmt || data_chunk == nullptr) {
        throw IoError(path + ": missing fmt or data chunk");
    }
    if (format_code != 1) {
        throw IoError(path + ": non-PCM format code " + std::to_string(format_code) +
                      ", PCM (1) required");
    }
    if (channels != 1) {
        throw IoError(path + ": mono required (got " + std::to_string(channels) + " channels)");
    }
    if (bits != 16) {
        throw IoError(path + ": 16-bit samples required (got " + std::to_string(bits) + "-bit)");
    }
    if (sample_rate == 0) {
        throw IoError(path + ": sample rate must be positive");
    }

    AudioSignal signal;
    signal.sample_rate = static_cast<int>(sample_rate);
    const std::size_t n = data_size / 2;
    signal.samples.resize(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const std::int16_t raw =
            static_cast<std::int16_t>(le16(data_chunk + 2 * k));
        signal.samples(static_cast<Eigen::Index>(k)) = static_cast<double>(raw) / 32768.0;
    }
    return signal;
}

AudioSignal read_raw_samples(const std::string& path, int sample_rate) {
    if (sample_rate <= 0) {
        throw ContractError("read_raw_samples: sample rate must be positive");
    }
    std::ifstream in(path);
    if (!in) {
        throw IoError(path + ": cannot open file");
    }
    std::vector<double> values;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            throw IoError(path + ": line " + std::to_string(line_no) + ": not a number: '" +
                          line + "'");
        }
        if (!(v >= -1.0 && v < 1.0)) {
            throw IoError(path + ": line " + std::to_string(line_no) +
                          ": sample out of [-1, 1): " + line);
        }
        values.push_back(v);
    }
    AudioSignal signal;
    signal.sample_rate = sample_rate;
    signal.samples = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                       static_cast<Eigen::Index>(values.size()));
    return signal;
}

void write_raw_samples(const std::string& path, const AudioSignal& signal) {
    std::ofstream out(path);
    if (!out) {
        throw IoError(path + ": cannot open file for writing");
    }
    out.precision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index k = 0; k < signal.samples.size(); ++k) {
        out << signal.samples(k) << "\n";
    }
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

}  // namespace wnav
