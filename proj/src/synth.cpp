#include "wnav/synth.hpp"

#include "wnav/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wnav {
namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stable per-pixel jitter in [-amplitude, amplitude] on a step grid,
// independent of paint order.
int texture_offset(std::uint64_t seed, std::uint64_t surface, int i, int j, int amplitude,
                   int step) {
    if (amplitude == 0) return 0;
    const std::uint64_t h = mix64(mix64(mix64(seed ^ (surface * 0x517CC1B727220A95ULL)) ^
                                        static_cast<std::uint64_t>(i)) ^
                                  static_cast<std::uint64_t>(j));
    const int levels_each_side = amplitude / step;
    return step * (static_cast<int>(h % static_cast<std::uint64_t>(2 * levels_each_side + 1)) -
                   levels_each_side);
}

// Uniform double in [-1, 1] from a hash stream.
double jitter_unit(std::uint64_t seed, std::uint64_t salt) {
    const std::uint64_t h = mix64(seed ^ mix64(salt));
    return 2.0 * (static_cast<double>(h >> 11) / 9007199254740992.0) - 1.0;
}

struct PaintTarget {
    RgbImage* image;
    int col_shift;  // obstacle columns move left by this much
};

void paint(const SceneSpec& spec, const SceneObstacle& obstacle, std::uint64_t surface,
           PaintTarget target, double scale) {
    for (int i = 0; i < obstacle.height_px; ++i) {
        for (int j = 0; j < obstacle.width_px; ++j) {
            const int row = obstacle.row0 + i;
            const int col = obstacle.col0 + j - target.col_shift;
            const int offset =
                texture_offset(spec.seed, surface, i, j, spec.texture_amplitude, spec.texture_step);
            for (int c = 0; c < 3; ++c) {
                const double value = scale * (obstacle.color[static_cast<std::size_t>(c)] + offset);
                if (value < 0.0 || value > 255.0) {
                    throw ContractError("scene intensity " + std::to_string(value) +
                                        " leaves 8-bit range (would clip)");
                }
                GrayImage& plane = c == 0 ? target.image->r : (c == 1 ? target.image->g
                                                                      : target.image->b);
                plane(row, col) = static_cast<std::uint8_t>(std::lround(value));
            }
        }
    }
}

}  // namespace

StereoScene render_stereo_scene(const SceneSpec& spec) {
    return render_stereo_scene(spec, 1.0);
}

StereoScene render_stereo_scene(const SceneSpec& spec, double right_intensity_scale) {
    if (spec.width < 1 || spec.height < 1) {
        throw ContractError("scene dimensions must be positive");
    }
    if (spec.rig.focal_px <= 0.0 || spec.rig.baseline_mm <= 0.0) {
        throw ContractError("scene rig needs positive focal length and baseline");
    }
    if (right_intensity_scale <= 0.0) {
        throw ContractError("intensity scale must be positive");
    }
    if (spec.texture_amplitude < 0 || spec.texture_step < 1) {
        throw ContractError("texture amplitude must be non-negative and step positive");
    }

    StereoScene scene;
    scene.left.r.resize(spec.height, spec.width);
    scene.left.g.resize(spec.height, spec.width);
    scene.left.b.resize(spec.height, spec.width);
    scene.right = scene.left;
    scene.truth_depth_mm = Raster<double>::Zero(spec.height, spec.width);
    scene.truth_disparity = Raster<int>::Zero(spec.height, spec.width);

    // Floor: identical in both views (disparity 0 by construction).
    for (int i = 0; i < spec.height; ++i) {
        for (int j = 0; j < spec.width; ++j) {
            const int offset =
                texture_offset(spec.seed, 0, i, j, spec.texture_amplitude, spec.texture_step);
            for (int c = 0; c < 3; ++c) {
                const double base = spec.floor_color[static_cast<std::size_t>(c)] + offset;
                const double right_value = right_intensity_scale * base;
                if (base < 0.0 || base > 255.0 || right_value < 0.0 || right_value > 255.0) {
                    throw ContractError("floor intensity leaves 8-bit range (would clip)");
                }
                GrayImage& lp = c == 0 ? scene.left.r : (c == 1 ? scene.left.g : scene.left.b);
                GrayImage& rp = c == 0 ? scene.right.r : (c == 1 ? scene.right.g : scene.right.b);
                lp(i, j) = static_cast<std::uint8_t>(std::lround(base));
                rp(i, j) = static_cast<std::uint8_t>(std::lround(right_value));
            }
        }
    }

    // Far to near so nearer surfaces overwrite at overlaps.
    std::vector<std::size_t> order(spec.obstacles.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return spec.obstacles[a].depth_mm > spec.obstacles[b].depth_mm;
    });

    for (const std::size_t index : order) {
        const SceneObstacle& obstacle = spec.obstacles[index];
        if (obstacle.depth_mm <= 0.0) {
            throw ContractError("obstacle depth must be positive");
        }
        if (obstacle.width_px < 1 || obstacle.height_px < 1) {
            throw ContractError("obstacle footprint must be at least 1x1");
        }
        const int disparity = static_cast<int>(
            std::round(spec.rig.focal_px * spec.rig.baseline_mm / obstacle.depth_mm));
        if (disparity > spec.d_max) {
            throw ContractError("obstacle at " + std::to_string(obstacle.depth_mm) +
                                " mm has disparity " + std::to_string(disparity) +
                                " beyond d_max " + std::to_string(spec.d_max));
        }
        if (obstacle.row0 < 0 || obstacle.col0 - disparity < 0 ||
            obstacle.row0 + obstacle.height_px > spec.height ||
            obstacle.col0 + obstacle.width_px > spec.width) {
            throw ContractError("obstacle footprint leaves the image in one of the views");
        }

        const std::uint64_t surface = index + 1;  // 0 is the floor
        paint(spec, obstacle, surface, {&scene.left, 0}, 1.0);
        paint(spec, obstacle, surface, {&scene.right, disparity}, right_intensity_scale);
        for (int i = 0; i < obstacle.height_px; ++i) {
            for (int j = 0; j < obstacle.width_px; ++j) {
                scene.truth_depth_mm(obstacle.row0 + i, obstacle.col0 + j) = obstacle.depth_mm;
                scene.truth_disparity(obstacle.row0 + i, obstacle.col0 + j) = disparity;
            }
        }
    }
    return scene;
}

const std::vector<std::string>& synth_vocabulary() {
    static const std::vector<std::string> words = {"front", "back",    "right",
                                                   "left",  "reverse", "stop"};
    return words;
}

AudioSignal synth_word(const std::string& label, std::uint64_t seed,
                       const FrontEndConfig& config, double duration_s) {
    config.validate();
    if (duration_s <= 0.0) {
        throw ContractError("synth_word: duration must be positive");
    }

    // Formant-like triples, spread over distinct mel channels per word.
    struct Voice {
        const char* word;
        std::array<double, 3> formants_hz;
    };
    static constexpr Voice kVoices[] = {
        {"front", {300.0, 1200.0, 2900.0}},  {"back", {500.0, 1600.0, 3100.0}},
        {"right", {700.0, 2000.0, 3300.0}},  {"left", {900.0, 2400.0, 3500.0}},
        {"reverse", {400.0, 1800.0, 2700.0}}, {"stop", {600.0, 1400.0, 3700.0}},
    };
    const Voice* voice = nullptr;
    std::uint64_t word_salt = 0;
    for (const Voice& v : kVoices) {
        ++word_salt;
        if (label == v.word) {
            voice = &v;
            break;
        }
    }
    if (voice == nullptr) {
        throw ContractError("synth_word: unknown label '" + label + "'");
    }

    const int fs = config.sample_rate;
    const Eigen::Index n = static_cast<Eigen::Index>(std::lround(duration_s * fs));
    static constexpr double kAmplitudes[3] = {0.5, 0.3, 0.2};

    AudioSignal signal;
    signal.sample_rate = fs;
    signal.samples.resize(n);

    double phase[3];
    double freq[3];
    for (int c = 0; c < 3; ++c) {
        const std::uint64_t salt = word_salt * 16 + static_cast<std::uint64_t>(c);
        phase[c] = std::numbers::pi * jitter_unit(seed, salt);
        freq[c] = voice->formants_hz[static_cast<std::size_t>(c)] *
                  (1.0 + 0.004 * jitter_unit(seed, salt + 8));
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        const double progress = static_cast<double>(k) / static_cast<double>(n);
        // Mid-word formant shift gives the matcher temporal structure; phase
        // accumulation keeps the waveform continuous across the shift.
        const double shift = progress < 0.5 ? 1.0 : 1.10;
        const double envelope =
            0.08 + 0.72 * std::pow(std::sin(std::numbers::pi * progress), 2.0);
        double sample = 0.0;
        for (int c = 0; c < 3; ++c) {
            sample += kAmplitudes[c] * std::sin(phase[c]);
            phase[c] += 2.0 * std::numbers::pi * freq[c] * shift / fs;
        }
        signal.samples(k) = envelope * sample;
    }
    return signal;
}

}  // namespace wnav
