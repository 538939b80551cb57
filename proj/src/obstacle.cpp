#include "wnav/obstacle.hpp"

#include "wnav/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wnav {
namespace {

constexpr int kKernel[5] = {1, 4, 6, 4, 1};  // rows/cols of the 5x5 binomial, sum 16

Eigen::Index clamp_index(Eigen::Index i, Eigen::Index n) {
    return std::clamp<Eigen::Index>(i, 0, n - 1);
}

GrayImage blur_plane(const GrayImage& plane) {
    const Eigen::Index h = plane.rows(), w = plane.cols();
    // Horizontal pass with integer weights; one rounding at the very end keeps
    // the separable result identical to the direct 2-D convolution.
    Raster<int> horizontal(h, w);
    for (Eigen::Index i = 0; i < h; ++i) {
        for (Eigen::Index j = 0; j < w; ++j) {
            int acc = 0;
            for (int t = -2; t <= 2; ++t) {
                acc += kKernel[t + 2] * plane(i, clamp_index(j + t, w));
            }
            horizontal(i, j) = acc;
        }
    }
    GrayImage out(h, w);
    for (Eigen::Index i = 0; i < h; ++i) {
        for (Eigen::Index j = 0; j < w; ++j) {
            int acc = 0;
            for (int t = -2; t <= 2; ++t) {
                acc += kKernel[t + 2] * horizontal(clamp_index(i + t, h), j);
            }
            out(i, j) = static_cast<std::uint8_t>((acc + 128) / 256);  // round to nearest
        }
    }
    return out;
}

std::array<double, 5> smooth_bins(const std::array<double, 5>& bins) {
    std::array<double, 5> out{};
    out[0] = (bins[0] + bins[1]) / 2.0;
    out[4] = (bins[3] + bins[4]) / 2.0;
    for (int i = 1; i <= 3; ++i) {
        out[i] = (bins[i - 1] + bins[i] + bins[i + 1]) / 3.0;
    }
    return out;
}

}  // namespace

void RegionSpec::validate(Eigen::Index height, Eigen::Index width) const {
    if (row0 > row1) {
        throw ContractError("region is empty: row0 > row1");
    }
    if (row0 < 0 || row1 >= height) {
        throw ContractError("region rows [" + std::to_string(row0) + ", " + std::to_string(row1) +
                            "] leave image of height " + std::to_string(height));
    }
    for (int r = row0; r <= row1; ++r) {
        const int c0 = col_begin(r), c1 = col_end(r);
        if (c0 > c1) {
            throw ContractError("region is empty at row " + std::to_string(r));
        }
        if (c0 < 0 || c1 >= width) {
            throw ContractError("region cols [" + std::to_string(c0) + ", " + std::to_string(c1) +
                                "] at row " + std::to_string(r) + " leave image of width " +
                                std::to_string(width));
        }
    }
}

RgbImage gaussian5x5(const RgbImage& image) {
    if (image.height() < 5 || image.width() < 5) {
        throw ContractError("gaussian5x5: image must be at least 5x5, got " +
                            std::to_string(image.height()) + "x" + std::to_string(image.width()));
    }
    return {blur_plane(image.r), blur_plane(image.g), blur_plane(image.b)};
}

HsvImage rgb_to_hsv(const RgbImage& image, double value_floor, double saturation_floor) {
    const Eigen::Index h = image.height(), w = image.width();
    HsvImage out{Raster<double>(h, w), Raster<double>(h, w), Raster<double>(h, w)};
    for (Eigen::Index i = 0; i < h; ++i) {
        for (Eigen::Index j = 0; j < w; ++j) {
            const int r = image.r(i, j), g = image.g(i, j), b = image.b(i, j);
            const int maxc = std::max({r, g, b});
            const int minc = std::min({r, g, b});
            const int delta = maxc - minc;

            const double value = maxc / 255.0;
            const double saturation = maxc == 0 ? 0.0 : static_cast<double>(delta) / maxc;
            double hue = 0.0;
            if (delta > 0) {
                if (maxc == r) {
                    hue = (g - b) / static_cast<double>(delta);
                    if (hue < 0.0) hue += 6.0;
                } else if (maxc == g) {
                    hue = 2.0 + (b - r) / static_cast<double>(delta);
                } else {
                    hue = 4.0 + (r - g) / static_cast<double>(delta);
                }
                hue /= 6.0;
            }
            if (value <= value_floor || saturation <= saturation_floor) {
                hue = kInvalidHue;
            }
            out.h(i, j) = hue;
            out.s(i, j) = saturation;
            out.v(i, j) = value;
        }
    }
    return out;
}

int bin_index(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ContractError("bin_index: input " + std::to_string(x) + " outside [0, 1]");
    }
    // Edges follow the reference histogram: [0, 0.2001, 0.4001, 0.6001, 0.8001],
    // with the would-be sixth bin merged into the fifth.
    static constexpr double kEdges[5] = {0.0, 0.2001, 0.4001, 0.6001, 0.8001};
    int bin = 1;
    for (int i = 4; i >= 1; --i) {
        if (x >= kEdges[i]) {
            bin = i + 1;
            break;
        }
    }
    return bin;
}

HistogramPair build_reference_histograms(const HsvImage& image, const RegionSpec& region,
                                         double threshold_divisor) {
    region.validate(image.height(), image.width());
    if (threshold_divisor <= 0.0) {
        throw ContractError("threshold divisor must be positive");
    }

    HistogramPair hist;
    for (int i = region.row0; i <= region.row1; ++i) {
        for (int j = region.col_begin(i); j <= region.col_end(i); ++j) {
            hist.val_raw[bin_index(image.v(i, j)) - 1] += 1.0;
            const double hue = image.h(i, j);
            if (hue != kInvalidHue) {
                hist.hue_raw[bin_index(hue) - 1] += 1.0;
            }
        }
    }
    hist.hue_bins = smooth_bins(hist.hue_raw);
    hist.val_bins = smooth_bins(hist.val_raw);
    hist.hue_threshold =
        *std::max_element(hist.hue_bins.begin(), hist.hue_bins.end()) / threshold_divisor;
    hist.val_threshold =
        *std::max_element(hist.val_bins.begin(), hist.val_bins.end()) / threshold_divisor;
    return hist;
}

ObstacleMask classify_pixels(const HsvImage& image, const HistogramPair& reference) {
    const Eigen::Index h = image.height(), w = image.width();
    ObstacleMask mask(h, w);
    for (Eigen::Index i = 0; i < h; ++i) {
        for (Eigen::Index j = 0; j < w; ++j) {
            bool obstacle = reference.val_bins[bin_index(image.v(i, j)) - 1] <
                            reference.val_threshold;
            const double hue = image.h(i, j);
            if (!obstacle && hue != kInvalidHue) {
                obstacle = reference.hue_bins[bin_index(hue) - 1] < reference.hue_threshold;
            }
            mask(i, j) = obstacle ? 1 : 0;
        }
    }
    return mask;
}

ObstacleMask median_filter(const ObstacleMask& mask, int window) {
    if (window < 1 || window % 2 == 0) {
        throw ContractError("median window must be odd and positive, got " +
                            std::to_string(window));
    }
    if (window == 1) {
        return mask;
    }
    const Eigen::Index h = mask.rows(), w = mask.cols();
    const int half = window / 2;

    // Summed-area table; zero padding means out-of-image cells contribute 0.
    Raster<int> sat(h + 1, w + 1);
    sat.setZero();
    for (Eigen::Index i = 0; i < h; ++i) {
        for (Eigen::Index j = 0; j < w; ++j) {
            sat(i + 1, j + 1) = (mask(i, j) ? 1 : 0) + sat(i, j + 1) + sat(i + 1, j) - sat(i, j);
        }
    }

    const int majority = (window * window) / 2;  // count > majority wins (window^2 is odd)
    ObstacleMask out(h, w);
    for (Eigen::Index i = 0; i < h; ++i) {
        const Eigen::Index i0 = std::max<Eigen::Index>(0, i - half);
        const Eigen::Index i1 = std::min<Eigen::Index>(h - 1, i + half);
        for (Eigen::Index j = 0; j < w; ++j) {
            const Eigen::Index j0 = std::max<Eigen::Index>(0, j - half);
            const Eigen::Index j1 = std::min<Eigen::Index>(w - 1, j + half);
            const int ones = sat(i1 + 1, j1 + 1) - sat(i0, j1 + 1) - sat(i1 + 1, j0) + sat(i0, j0);
            out(i, j) = ones > majority ? 1 : 0;
        }
    }
    return out;
}

ObstacleMask detect_obstacles(const RgbImage& image, const RegionSpec& region,
                              const ObstacleConfig& config) {
    const RgbImage filtered = gaussian5x5(image);
    const HsvImage hsv = rgb_to_hsv(filtered, config.value_floor, config.saturation_floor);
    const HistogramPair reference =
        build_reference_histograms(hsv, region, config.threshold_divisor);
    const ObstacleMask raw = classify_pixels(hsv, reference);
    return median_filter(raw, config.median_window);
}

}  // namespace wnav
