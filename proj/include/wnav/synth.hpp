#pragma once

#include "wnav/audio_io.hpp"
#include "wnav/calibration.hpp"
#include "wnav/image.hpp"
#include "wnav/speech.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wnav {

/// Fronto-parallel textured patch at constant depth. Geometry is given in
/// pixels of the left image; the right image shows it shifted left by
/// round(f*T/Z) columns.
struct SceneObstacle {
    double depth_mm = 0.0;
    int row0 = 0, col0 = 0;   // top-left corner in the left image
    int height_px = 0, width_px = 0;
    std::array<std::uint8_t, 3> color{0, 0, 0};
};

struct SceneSpec {
    CameraRig rig;
    int width = 320, height = 240;
    std::array<std::uint8_t, 3> floor_color{60, 60, 60};
    std::uint64_t seed = 0;
    int texture_amplitude = 12;  // per-pixel brightness jitter, +-amplitude
    int texture_step = 1;        // jitter granularity; coarse steps keep scenes
                                 // exactly proportional under brightness scaling
    int d_max = 25;              // obstacles whose disparity exceeds this are rejected
    std::vector<SceneObstacle> obstacles;
};

/// Rectified pair with per-pixel ground truth. Floor pixels carry depth 0 /
/// disparity 0 (no evaluation expected there).
struct StereoScene {
    RgbImage left, right;
    Raster<double> truth_depth_mm;
    Raster<int> truth_disparity;
};

/// Deterministic scene renderer: same spec, same bytes. Nearer obstacles
/// overwrite farther ones where they overlap. Throws when an obstacle's
/// disparity exceeds d_max or its footprint leaves either image.
StereoScene render_stereo_scene(const SceneSpec& spec);

/// Optional brightness pre-scaling applied to the pre-quantization intensities
/// (used to probe matcher behavior under linear illumination change). Values
/// must stay within 8 bits; scaling that would clip throws.
StereoScene render_stereo_scene(const SceneSpec& spec, double right_intensity_scale);

/// The six command words of the recognizer's default vocabulary.
const std::vector<std::string>& synth_vocabulary();

/// Deterministic word-like utterance: per-label formant triple with a
/// mid-word formant shift, Hann-ish amplitude envelope, and small seeded
/// phase/frequency jitter. 1.5 s by default.
AudioSignal synth_word(const std::string& label, std::uint64_t seed,
                       const FrontEndConfig& config, double duration_s = 1.5);

}  // namespace wnav
