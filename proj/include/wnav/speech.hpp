#pragma once

#include "wnav/audio_io.hpp"
#include "wnav/melmat_io.hpp"

#include <Eigen/Dense>

#include <vector>

namespace wnav {

enum class FeatureKind { LogMel, Mfcc };

/// Acoustic front-end settings (8 kHz command words by default).
struct FrontEndConfig {
    int sample_rate = 8000;
    int fft_length = 256;            // N, power of two
    int frame_shift = 80;            // 10 ms at 8 kHz
    int mel_channels = 22;           // K
    double log_floor = 1e-4;         // floor for logs and energy division
    bool preemphasis = false;
    double preemphasis_coeff = 0.97;
    int mfcc_count = 13;             // Q <= K
    FeatureKind features = FeatureKind::LogMel;

    void validate() const;
};

/// frames-as-columns matrix of |V(n)|^2 over the lower N/2 bins, plus the
/// per-frame energy (the column sum).
struct PowerSpectrumFrames {
    Eigen::MatrixXd spectra;  // (N/2) x frames
    Eigen::VectorXd energy;   // frames

    Eigen::Index frame_count() const { return spectra.cols(); }
};

/// High-pass spectral tilt compensation: out(k) = s(k) - coeff * s(k-1), out(0) = s(0).
AudioSignal pre_emphasis(const AudioSignal& signal, double coeff = 0.97);

/// Hamming-windowed short-term power spectra every frame_shift samples.
/// Frames start at 0, shift, 2*shift, ... while start + N <= length.
PowerSpectrumFrames frame_power_spectrum(const AudioSignal& signal, const FrontEndConfig& config);

/// Perceptual frequency warp, 2595 * log10(1 + f/700), and its inverse.
double mel_of_freq(double freq_hz);
double freq_of_mel(double mel);

/// K x (N/2) triangle filterbank: centers equally spaced on the mel axis at
/// mel(fs/2)/(K+1) increments, mapped to rounded spectrum indices; each row
/// normalized to unit sum. Throws when K is too large for N (adjacent centers
/// collapse onto the same index).
Eigen::MatrixXd mel_filter_matrix(const FrontEndConfig& config);

/// Pre-log mel channel energies, each frame normalized by its (floored)
/// spectral energy. This is the G(k) path the cepstral transform consumes.
Eigen::MatrixXd mel_energies(const AudioSignal& signal, const FrontEndConfig& config);

/// log(max(x, floor)) of mel_energies: the MelMatrix used for templates.
MelMatrix mel_spectrogram(const AudioSignal& signal, const FrontEndConfig& config);

/// Time-domain frame energy, sum of squared samples.
double frame_energy(const Eigen::VectorXd& frame);

/// Inverse DFT of a symmetric length-N log power spectrum (1/N scaling).
/// Input must satisfy x[n] == x[(N-n) mod N]; the imaginary residue is
/// checked against 1e-9 and discarded.
std::vector<double> cepstrum(const std::vector<double>& log_power_spectrum);

/// Cosine-transform form over the half spectrum (length N/2 input), with the
/// sqrt(2/N) / sqrt(4/N) scaling. Returns N/2 + 1 coefficients. Scaling is
/// deliberately not reconciled with cepstrum(); compare shapes, not values.
std::vector<double> cepstrum_cosine(const std::vector<double>& log_power_half_spectrum);

/// Low-pass liftering: zero every cepstral coefficient with index in
/// [keep, N-keep], then transform back. keep in [1, N]; keep > N/2 acts as
/// the identity (nothing left to zero).
std::vector<double> cepstral_smooth(const std::vector<double>& log_power_spectrum, int keep);

/// Cosine transform of the logged mel energies, rows q = 0..Q-1.
Eigen::MatrixXd mfcc(const Eigen::MatrixXd& mel_energy_frames, const FrontEndConfig& config);

/// Feature dispatch per config: log-mel matrix (default) or MFCC matrix.
Eigen::MatrixXd extract_features(const AudioSignal& signal, const FrontEndConfig& config);

}  // namespace wnav
