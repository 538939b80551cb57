#pragma once

#include <Eigen/Dense>

#include <string>

namespace wnav {

/// Mono audio, samples normalized to [-1, 1).
struct AudioSignal {
    int sample_rate = 0;
    Eigen::VectorXd samples;
};

/// RIFF/WAVE reader. Accepts PCM format code 1, 16-bit signed little-endian,
/// mono; each sample decodes as raw/32768. Unknown chunks are skipped.
AudioSignal read_wav(const std::string& path);

/// Text sample format (one decimal sample per line), used for synthesized words.
AudioSignal read_raw_samples(const std::string& path, int sample_rate);
void write_raw_samples(const std::string& path, const AudioSignal& signal);

}  // namespace wnav
