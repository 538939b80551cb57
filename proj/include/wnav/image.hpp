#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>

namespace wnav {

/// Dense raster, row-major so .data() is the scan-order pixel payload.
template <typename Scalar>
using Raster = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit single-channel raster. Also carries {0,255} masks and scaled disparities on disk.
using GrayImage = Raster<std::uint8_t>;

/// Binary raster, 1 = obstacle, 0 = ground.
using ObstacleMask = Raster<std::uint8_t>;

/// 8-bit color raster stored as planes; (row, col) indexing, top-left origin.
struct RgbImage {
    GrayImage r, g, b;

    Eigen::Index height() const { return r.rows(); }
    Eigen::Index width() const { return r.cols(); }

    static RgbImage constant(Eigen::Index height, Eigen::Index width,
                             std::array<std::uint8_t, 3> color) {
        return {GrayImage::Constant(height, width, color[0]),
                GrayImage::Constant(height, width, color[1]),
                GrayImage::Constant(height, width, color[2])};
    }
};

/// ITU-R 601 luma, rounded to nearest integer.
GrayImage to_gray(const RgbImage& image);

/// Mask serialization convention: 0 -> 0, 1 -> 255.
GrayImage mask_to_gray(const ObstacleMask& mask);

/// Inverse of mask_to_gray; any nonzero byte counts as obstacle.
ObstacleMask gray_to_mask(const GrayImage& image);

/// Left-right flip of a binary mask (column j -> width-1-j).
ObstacleMask mirror_horizontal(const ObstacleMask& mask);

}  // namespace wnav
