#pragma once

#include <array>
#include <string>

namespace wnav {

/// Stereo rig intrinsics/extrinsics actually used by triangulation:
/// focal length in pixels, baseline in millimeters, principal point,
/// and (parsed but unused) lens distortion coefficients k1,k2,p1,p2.
struct CameraRig {
    double focal_px = 0.0;
    double baseline_mm = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    std::array<double, 4> distortion{0.0, 0.0, 0.0, 0.0};
};

/// Plain-text `key = value` file. Required keys: focal_px, baseline_mm, cx, cy.
/// Optional: k1, k2, p1, p2 (default 0). Blank lines and '#' comments allowed.
CameraRig read_calibration(const std::string& path);

}  // namespace wnav
