#include "wnav/image.hpp"

#include <cmath>

namespace wnav {

GrayImage to_gray(const RgbImage& image) {
    GrayImage out(image.height(), image.width());
    for (Eigen::Index i = 0; i < image.height(); ++i) {
        for (Eigen::Index j = 0; j < image.width(); ++j) {
            const double y = 0.299 * image.r(i, j) + 0.587 * image.g(i, j) + 0.114 * image.b(i, j);
            out(i, j) = static_cast<std::uint8_t>(std::lround(y));
        }
    }
    return out;
}

GrayImage mask_to_gray(const ObstacleMask& mask) {
    return (mask.array() != 0).select(GrayImage::Constant(mask.rows(), mask.cols(), 255),
                                      GrayImage::Zero(mask.rows(), mask.cols()));
}

ObstacleMask gray_to_mask(const GrayImage& image) {
    return (image.array() != 0).cast<std::uint8_t>();
}

ObstacleMask mirror_horizontal(const ObstacleMask& mask) {
    return mask.rowwise().reverse();
}

}  // namespace wnav
