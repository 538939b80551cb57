#include "wnav/speech.hpp"

#include "wnav/error.hpp"
#include "wnav/fft.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace wnav {
namespace {

bool is_power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

double log_with_floor(double x, double floor) {
    return std::log(std::max(x, floor));
}

void check_symmetric(const std::vector<double>& x) {
    const std::size_t n = x.size();
    double scale = 1.0;
    for (const double v : x) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(x[i] - x[(n - i) % n]) > 1e-9 * scale) {
            throw ContractError("cepstrum input is not symmetric at index " + std::to_string(i));
        }
    }
}

std::vector<double> real_parts_checked(const std::vector<std::complex<double>>& data) {
    double scale = 1.0;
    for (const auto& v : data) scale = std::max(scale, std::abs(v.real()));
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (std::abs(data[i].imag()) > 1e-9 * scale) {
            throw ContractError("transform produced a non-real result");
        }
        out[i] = data[i].real();
    }
    return out;
}

}  // namespace

void FrontEndConfig::validate() const {
    if (sample_rate <= 0) throw ContractError("sample_rate must be positive");
    if (!is_power_of_two(fft_length) || fft_length < 4) {
        throw ContractError("fft_length must be a power of two >= 4, got " +
                            std::to_string(fft_length));
    }
    if (frame_shift < 1) throw ContractError("frame_shift must be at least 1");
    if (mel_channels < 2) throw ContractError("mel_channels must be at least 2");
    if (!(log_floor > 0.0)) throw ContractError("log_floor must be positive");
    if (mfcc_count < 1 || mfcc_count > mel_channels) {
        throw ContractError("mfcc_count must be in [1, mel_channels]");
    }
}

AudioSignal pre_emphasis(const AudioSignal& signal, double coeff) {
    AudioSignal out;
    out.sample_rate = signal.sample_rate;
    out.samples.resize(signal.samples.size());
    if (signal.samples.size() == 0) return out;
    out.samples(0) = signal.samples(0);
    for (Eigen::Index k = 1; k < signal.samples.size(); ++k) {
        out.samples(k) = signal.samples(k) - coeff * signal.samples(k - 1);
    }
    return out;
}

PowerSpectrumFrames frame_power_spectrum(const AudioSignal& signal,
                                         const FrontEndConfig& config) {
    config.validate();
    const Eigen::Index n = config.fft_length;
    const Eigen::Index len = signal.samples.size();
    if (len < n) {
        throw ContractError("signal (" + std::to_string(len) +
                            " samples) is shorter than one frame (" + std::to_string(n) + ")");
    }
    const Eigen::Index frames = (len - n) / config.frame_shift + 1;
    const Eigen::Index half = n / 2;

    Eigen::VectorXd window(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        window(i) = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                           static_cast<double>(n - 1));
    }

    PowerSpectrumFrames out;
    out.spectra.resize(half, frames);
    out.energy.resize(frames);
    std::vector<std::complex<double>> buffer(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < frames; ++k) {
        const Eigen::Index start = k * config.frame_shift;
        for (Eigen::Index i = 0; i < n; ++i) {
            buffer[static_cast<std::size_t>(i)] = window(i) * signal.samples(start + i);
        }
        fft_inplace(buffer, false);
        for (Eigen::Index i = 0; i < half; ++i) {
            out.spectra(i, k) = std::norm(buffer[static_cast<std::size_t>(i)]);
        }
        out.energy(k) = out.spectra.col(k).sum();
    }
    return out;
}

double mel_of_freq(double freq_hz) {
    if (freq_hz < 0.0) {
        throw ContractError("mel_of_freq: frequency must be non-negative");
    }
    return 2595.0 * std::log10(1.0 + freq_hz / 700.0);
}

double freq_of_mel(double mel) {
    if (mel < 0.0) {
        throw ContractError("freq_of_mel: mel value must be non-negative");
    }
    return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

Eigen::MatrixXd mel_filter_matrix(const FrontEndConfig& config) {
    config.validate();
    const int k_channels = config.mel_channels;
    const int half = config.fft_length / 2;
    const double bin_width = static_cast<double>(config.sample_rate) / config.fft_length;

    // Centers equally spaced on the mel axis, then snapped to spectrum
    // columns. Columns are 1-based here to mirror the construction that the
    // rest of the pipeline's conventions come from; storage is 0-based.
    const double mel_max = mel_of_freq(config.sample_rate / 2.0);
    const double mel_step = mel_max / (k_channels + 1);
    std::vector<int> center(k_channels);
    for (int c = 0; c < k_channels; ++c) {
        const double hz = freq_of_mel(mel_step * (c + 1));
        center[c] = static_cast<int>(std::round(hz / bin_width));
    }

    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(k_channels, half);
    for (int c = 0; c < k_channels; ++c) {
        const int start = c == 0 ? 1 : center[c - 1];
        const int stop = c == k_channels - 1 ? half : center[c + 1];
        if (center[c] <= start || stop <= center[c]) {
            throw ContractError("mel filterbank: channel " + std::to_string(c + 1) +
                                " collapses (too many channels for fft_length " +
                                std::to_string(config.fft_length) + ")");
        }
        for (int i = start; i <= center[c]; ++i) {
            weights(c, i - 1) = static_cast<double>(i - start) / (center[c] - start);
        }
        for (int i = center[c]; i <= stop; ++i) {
            weights(c, i - 1) = 1.0 - static_cast<double>(i - center[c]) / (stop - center[c]);
        }
    }
    for (int c = 0; c < k_channels; ++c) {
        weights.row(c) /= weights.row(c).sum();
    }
    return weights;
}

Eigen::MatrixXd mel_energies(const AudioSignal& signal, const FrontEndConfig& config) {
    const AudioSignal& input =
        config.preemphasis ? pre_emphasis(signal, config.preemphasis_coeff) : signal;
    const PowerSpectrumFrames frames = frame_power_spectrum(input, config);
    const Eigen::MatrixXd bank = mel_filter_matrix(config);

    Eigen::MatrixXd mel = bank * frames.spectra;
    for (Eigen::Index k = 0; k < mel.cols(); ++k) {
        mel.col(k) /= std::max(frames.energy(k), config.log_floor);
    }
    return mel;
}

MelMatrix mel_spectrogram(const AudioSignal& signal, const FrontEndConfig& config) {
    Eigen::MatrixXd mel = mel_energies(signal, config);
    return mel.unaryExpr(
        [floor = config.log_floor](double x) { return log_with_floor(x, floor); });
}

double frame_energy(const Eigen::VectorXd& frame) {
    return frame.squaredNorm();
}

std::vector<double> cepstrum(const std::vector<double>& log_power_spectrum) {
    check_symmetric(log_power_spectrum);
    std::vector<std::complex<double>> buffer(log_power_spectrum.begin(),
                                             log_power_spectrum.end());
    fft_inplace(buffer, true);
    return real_parts_checked(buffer);
}

std::vector<double> cepstrum_cosine(const std::vector<double>& log_power_half_spectrum) {
    const int half = static_cast<int>(log_power_half_spectrum.size());
    if (half < 2) {
        throw ContractError("cepstrum_cosine: need at least two spectrum values");
    }
    const int n = 2 * half;
    std::vector<double> out(static_cast<std::size_t>(half) + 1);
    double sum = 0.0;
    for (const double v : log_power_half_spectrum) sum += v;
    out[0] = std::sqrt(2.0 / n) * sum;
    for (int d = 1; d <= half; ++d) {
        double acc = 0.0;
        for (int i = 0; i < half; ++i) {
            acc += log_power_half_spectrum[static_cast<std::size_t>(i)] *
                   std::cos(std::numbers::pi * d * (2.0 * i + 1.0) / n);
        }
        out[static_cast<std::size_t>(d)] = std::sqrt(4.0 / n) * acc;
    }
    return out;
}

std::vector<double> cepstral_smooth(const std::vector<double>& log_power_spectrum, int keep) {
    const int n = static_cast<int>(log_power_spectrum.size());
    if (keep < 1 || keep > n) {
        throw ContractError("cepstral_smooth: keep must be in [1, " + std::to_string(n) +
                            "], got " + std::to_string(keep));
    }
    std::vector<double> coeffs = cepstrum(log_power_spectrum);
    for (int d = keep; d <= n - keep; ++d) {
        coeffs[static_cast<std::size_t>(d)] = 0.0;
    }
    std::vector<std::complex<double>> buffer(coeffs.begin(), coeffs.end());
    fft_inplace(buffer, false);
    return real_parts_checked(buffer);
}

Eigen::MatrixXd mfcc(const Eigen::MatrixXd& mel_energy_frames, const FrontEndConfig& config) {
    config.validate();
    const Eigen::Index k_channels = mel_energy_frames.rows();
    if (k_channels != config.mel_channels) {
        throw ContractError("mfcc: expected " + std::to_string(config.mel_channels) +
                            " mel channels, got " + std::to_string(k_channels));
    }
    const Eigen::Index q_count = config.mfcc_count;

    Eigen::MatrixXd dct(q_count, k_channels);
    for (Eigen::Index q = 0; q < q_count; ++q) {
        for (Eigen::Index k = 0; k < k_channels; ++k) {
            dct(q, k) = std::cos(std::numbers::pi * static_cast<double>(q) *
                                 (2.0 * static_cast<double>(k) + 1.0) /
                                 (2.0 * static_cast<double>(k_channels)));
        }
    }
    const Eigen::MatrixXd logged = mel_energy_frames.unaryExpr(
        [floor = config.log_floor](double x) { return log_with_floor(x, floor); });
    return dct * logged;
}

Eigen::MatrixXd extract_features(const AudioSignal& signal, const FrontEndConfig& config) {
    if (config.features == FeatureKind::Mfcc) {
        return mfcc(mel_energies(signal, config), config);
    }
    return mel_spectrogram(signal, config);
}

}  // namespace wnav
