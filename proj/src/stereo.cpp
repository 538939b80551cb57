#include "wnav/stereo.hpp"

#include "wnav/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace wnav {
namespace {

void check_window(const GrayImage& img, int row, int col, int window_half, const char* which) {
    if (window_half < 1) {
        throw ContractError("window_half must be at least 1");
    }
    if (row - window_half < 0 || row + window_half >= img.rows() || col - window_half < 0 ||
        col + window_half >= img.cols()) {
        throw ContractError(std::string(which) + " window centered at (" + std::to_string(row) +
                            ", " + std::to_string(col) + ") leaves image bounds");
    }
}

}  // namespace

Eigen::Vector2d project_point(const CameraRig& rig, const Eigen::Vector3d& world_mm) {
    if (world_mm.z() <= 0.0) {
        throw ContractError("project_point: depth must be positive, got " +
                            std::to_string(world_mm.z()));
    }
    return {rig.focal_px * world_mm.x() / world_mm.z() + rig.cx,
            rig.focal_px * world_mm.y() / world_mm.z() + rig.cy};
}

double ncc_score(const GrayImage& base, const GrayImage& cand, int row, int col, int d,
                 int window_half) {
    check_window(base, row, col, window_half, "base");
    check_window(cand, row, col - d, window_half, "candidate");

    std::int64_t cross = 0, base_sq = 0, cand_sq = 0;
    for (int a = -window_half; a <= window_half; ++a) {
        for (int b = -window_half; b <= window_half; ++b) {
            const std::int64_t x = base(row + a, col + b);
            const std::int64_t y = cand(row + a, col - d + b);
            cross += x * y;
            base_sq += x * x;
            cand_sq += y * y;
        }
    }
    if (base_sq == 0 || cand_sq == 0) {
        return 0.0;
    }
    return static_cast<double>(cross) /
           std::sqrt(static_cast<double>(base_sq) * static_cast<double>(cand_sq));
}

double sad_score(const GrayImage& base, const GrayImage& cand, int row, int col, int d,
                 int window_half) {
    check_window(base, row, col, window_half, "base");
    check_window(cand, row, col - d, window_half, "candidate");

    std::int64_t total = 0;
    for (int a = -window_half; a <= window_half; ++a) {
        for (int b = -window_half; b <= window_half; ++b) {
            total += std::abs(static_cast<int>(base(row + a, col + b)) -
                              static_cast<int>(cand(row + a, col - d + b)));
        }
    }
    return static_cast<double>(total);
}

DisparityMap compute_disparity(const GrayImage& left, const GrayImage& right,
                               const ObstacleMask& mask, const NavRegion& region,
                               const MatchParams& params) {
    if (left.rows() != right.rows() || left.cols() != right.cols()) {
        throw ContractError("stereo pair dimensions differ: " + std::to_string(left.rows()) + "x" +
                            std::to_string(left.cols()) + " vs " + std::to_string(right.rows()) +
                            "x" + std::to_string(right.cols()));
    }
    if (mask.rows() != left.rows() || mask.cols() != left.cols()) {
        throw ContractError("mask dimensions differ from images");
    }
    if (params.window_half < 1 || params.d_min < 0 || params.d_min > params.d_max) {
        throw ContractError("invalid match parameters");
    }

    const int h = static_cast<int>(left.rows());
    const int w = static_cast<int>(left.cols());
    const int half = params.window_half;
    const bool use_ncc = params.metric == MatchParams::Metric::Ncc;

    DisparityMap map{Raster<int>::Zero(h, w), params.d_max};

    const int row_lo = std::max(region.row0, half);
    const int row_hi = std::min({region.row1, h - 1 - half});
    for (int i = row_lo; i <= row_hi; ++i) {
        const int k = (i - region.row0) * region.widen_per_row;
        const int col_lo = std::max(region.col0 - k, half);
        const int col_hi = std::min(region.col1 + k, w - 1 - half);
        for (int j = col_lo; j <= col_hi; ++j) {
            if (!mask(i, j)) continue;
            const int d_cap = std::min(params.d_max, j - half);
            if (d_cap < params.d_min) continue;  // no candidate window fits

            int best_d = 0;
            double best_score =
                use_ncc ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
            bool found = false;
            for (int d = params.d_min; d <= d_cap; ++d) {
                const double score = use_ncc ? ncc_score(left, right, i, j, d, half)
                                             : sad_score(left, right, i, j, d, half);
                // Strict comparison keeps the smallest disparity on ties.
                if (use_ncc ? score > best_score : score < best_score) {
                    best_score = score;
                    best_d = d;
                    found = true;
                }
            }
            if (found) {
                map.d(i, j) = best_d;
            }
        }
    }

    // 5x5 median over the raw map, zero padded, written back only inside the
    // evaluated region so untouched pixels stay 0.
    Raster<int> filtered = map.d;
    std::vector<int> window;
    window.reserve(25);
    for (int i = row_lo; i <= row_hi; ++i) {
        const int k = (i - region.row0) * region.widen_per_row;
        const int col_lo = std::max(region.col0 - k, half);
        const int col_hi = std::min(region.col1 + k, w - 1 - half);
        for (int j = col_lo; j <= col_hi; ++j) {
            if (!mask(i, j)) continue;
            window.clear();
            for (int a = -2; a <= 2; ++a) {
                for (int b = -2; b <= 2; ++b) {
                    const int r = i + a, c = j + b;
                    window.push_back((r >= 0 && r < h && c >= 0 && c < w) ? map.d(r, c) : 0);
                }
            }
            std::nth_element(window.begin(), window.begin() + 12, window.end());
            filtered(i, j) = window[12];
        }
    }
    map.d = std::move(filtered);
    return map;
}

double disparity_to_depth(int d, const CameraRig& rig) {
    if (d < 1) {
        throw ContractError("disparity_to_depth: disparity " + std::to_string(d) +
                            " means infinite depth");
    }
    return rig.focal_px * rig.baseline_mm / static_cast<double>(d);
}

double nearest_obstacle_distance(const DisparityMap& disparity, const CameraRig& rig,
                                 int support_threshold) {
    const int threshold = support_threshold >= 0 ? support_threshold : 3 * disparity.d_max;

    std::vector<long> counts(static_cast<std::size_t>(disparity.d_max) + 1, 0);
    for (Eigen::Index i = 0; i < disparity.height(); ++i) {
        for (Eigen::Index j = 0; j < disparity.width(); ++j) {
            const int d = disparity.d(i, j);
            if (d >= 1 && d <= disparity.d_max) {
                ++counts[static_cast<std::size_t>(d)];
            }
        }
    }
    for (int d = disparity.d_max; d >= 1; --d) {
        if (counts[static_cast<std::size_t>(d)] > threshold) {
            return disparity_to_depth(d, rig);
        }
    }
    return kNoObstacleDistanceMm;
}

GrayImage disparity_to_gray(const DisparityMap& disparity) {
    if (disparity.d_max < 1) {
        throw ContractError("disparity_to_gray: d_max must be positive");
    }
    GrayImage out(disparity.height(), disparity.width());
    for (Eigen::Index i = 0; i < disparity.height(); ++i) {
        for (Eigen::Index j = 0; j < disparity.width(); ++j) {
            out(i, j) = static_cast<std::uint8_t>(
                std::lround(255.0 * disparity.d(i, j) / disparity.d_max));
        }
    }
    return out;
}

}  // namespace wnav
