#pragma once

#include "wnav/image.hpp"

#include <array>

namespace wnav {

/// Hue value marking "no meaningful hue" (dark or desaturated pixel).
inline constexpr double kInvalidHue = 2.0;

/// Per-pixel hue/saturation/value planes, each in [0,1]; h additionally may
/// hold kInvalidHue, and does exactly when v <= value_floor or s <= saturation_floor.
struct HsvImage {
    Raster<double> h, s, v;

    Eigen::Index height() const { return v.rows(); }
    Eigen::Index width() const { return v.cols(); }
};

/// Ground-appearance model: 5-bin hue and value histograms of the reference
/// area. `hue_bins`/`val_bins` are the smoothed counts used for classification;
/// raw pre-smoothing counts are kept alongside. Thresholds are max(bins)/50.
struct HistogramPair {
    std::array<double, 5> hue_bins{};
    std::array<double, 5> val_bins{};
    std::array<double, 5> hue_raw{};
    std::array<double, 5> val_raw{};
    double hue_threshold = 0.0;
    double val_threshold = 0.0;
};

/// Reference area in front of the chair, assumed obstacle-free.
/// Rectangle: rows [row0,row1] x cols [col0,col1], inclusive.
/// Trapezoid: at row r the span is [col0 - k*widen, col1 + k*widen], k = r - row0.
struct RegionSpec {
    enum class Kind { Rectangle, Trapezoid };

    Kind kind = Kind::Rectangle;
    int row0 = 180;
    int row1 = 239;
    int col0 = 20;
    int col1 = 299;
    int widen_per_row = 1;  // trapezoid only

    int col_begin(int row) const {
        return kind == Kind::Rectangle ? col0 : col0 - (row - row0) * widen_per_row;
    }
    int col_end(int row) const {  // inclusive
        return kind == Kind::Rectangle ? col1 : col1 + (row - row0) * widen_per_row;
    }

    /// Throws ContractError when the region is empty or leaves the image.
    void validate(Eigen::Index height, Eigen::Index width) const;
};

struct ObstacleConfig {
    double value_floor = 0.05;       // below this intensity, hue/saturation are noise
    double saturation_floor = 0.1;   // below this saturation, hue is meaningless
    double threshold_divisor = 50.0; // histogram threshold = max(bins)/divisor
    int median_window = 9;
};

/// 5x5 binomial blur ([1,4,6,4,1]/16 separable), edge-replicated borders,
/// rounded back to 8 bit. Requires at least a 5x5 image.
RgbImage gaussian5x5(const RgbImage& image);

/// Hexcone HSV with h scaled to [0,1], then the validity rule: h becomes
/// kInvalidHue when v <= value_floor or s <= saturation_floor.
HsvImage rgb_to_hsv(const RgbImage& image, double value_floor = 0.05,
                    double saturation_floor = 0.1);

/// Histogram bin of x in [0,1] against edges {0, 0.2001, 0.4001, 0.6001, 0.8001};
/// returns 1..5, top bin closed at 1.0. Rejects anything outside [0,1].
int bin_index(double x);

HistogramPair build_reference_histograms(const HsvImage& image, const RegionSpec& region,
                                         double threshold_divisor = 50.0);

/// A pixel is an obstacle when its value-bin count is below the value
/// threshold, or its hue is valid and the hue-bin count is below the hue
/// threshold (both strictly below). Invalid-hue pixels are judged on value only.
ObstacleMask classify_pixels(const HsvImage& image, const HistogramPair& reference);

/// Binary majority filter over a k x k window, zero-padded borders. k odd.
ObstacleMask median_filter(const ObstacleMask& mask, int window);

/// Full pipeline: blur, color transform, reference histograms, per-pixel
/// comparison, despeckle.
ObstacleMask detect_obstacles(const RgbImage& image, const RegionSpec& region,
                              const ObstacleConfig& config = {});

}  // namespace wnav
