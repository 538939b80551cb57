#pragma once

#include "wnav/calibration.hpp"
#include "wnav/image.hpp"

#include <Eigen/Dense>

namespace wnav {

/// Distance reported when no disparity level has enough support.
inline constexpr double kNoObstacleDistanceMm = 5000.0;

/// Window matcher settings. window_half=4 means 9x9 windows.
struct MatchParams {
    enum class Metric { Ncc, Sad };

    int window_half = 4;
    int d_min = 0;
    int d_max = 25;
    Metric metric = Metric::Ncc;
};

/// Rows and per-row column spans the chair can drive into. The span widens by
/// `widen_per_row` columns per side per row going down; spans are clipped to
/// window-safe image bounds when evaluated.
struct NavRegion {
    int row0 = 120;
    int row1 = 210;
    int col0 = 100;
    int col1 = 200;
    int widen_per_row = 1;
};

/// Per-pixel integer disparity in [0, d_max]; 0 = no match / not evaluated.
struct DisparityMap {
    Raster<int> d;
    int d_max = 25;

    Eigen::Index height() const { return d.rows(); }
    Eigen::Index width() const { return d.cols(); }
};

/// Pinhole projection of a world point (mm) onto the image plane; rotation is
/// identity, so the stereo pair is handled by shifting X by the baseline.
Eigen::Vector2d project_point(const CameraRig& rig, const Eigen::Vector3d& world_mm);

/// Normalized cross correlation between the window centered at (row, col) in
/// `base` and the window centered at (row, col - d) in `cand`. 0 when either
/// window is identically zero.
double ncc_score(const GrayImage& base, const GrayImage& cand, int row, int col, int d,
                 int window_half);

/// Sum of absolute differences over the same window pair (smaller is better).
double sad_score(const GrayImage& base, const GrayImage& cand, int row, int col, int d,
                 int window_half);

/// Window matching over the navigation region, left image as base, candidate
/// windows shifted left in the right image. Evaluates only mask=1 pixels;
/// equal scores keep the smallest disparity; result is 5x5 median filtered
/// within the region. Inputs must be rectified.
DisparityMap compute_disparity(const GrayImage& left, const GrayImage& right,
                               const ObstacleMask& mask, const NavRegion& region,
                               const MatchParams& params);

/// Triangulated depth in mm. d must be at least 1.
double disparity_to_depth(int d, const CameraRig& rig);

/// Largest disparity whose pixel count exceeds support_threshold, triangulated
/// to mm; kNoObstacleDistanceMm when nothing qualifies. A negative threshold
/// selects the default 3 * d_max.
double nearest_obstacle_distance(const DisparityMap& disparity, const CameraRig& rig,
                                 int support_threshold = -1);

/// Display convention: disparity scales to gray by 255/d_max (closer = brighter).
GrayImage disparity_to_gray(const DisparityMap& disparity);

}  // namespace wnav
