#include "wnav/nav.hpp"

namespace wnav {
namespace {

// Bottom-most obstacle row per column, limited to rows <= 210 (0 when none).
double mean_bottom_row(const ObstacleMask& mask, Eigen::Index col_begin, Eigen::Index col_end) {
    const Eigen::Index last_row = std::min<Eigen::Index>(mask.rows() - 1, 210);
    double sum = 0.0;
    for (Eigen::Index j = col_begin; j < col_end; ++j) {
        for (Eigen::Index i = last_row; i >= 0; --i) {
            if (mask(i, j)) {
                sum += static_cast<double>(i);
                break;
            }
        }
    }
    return sum / static_cast<double>(col_end - col_begin);
}

}  // namespace

SideMeans side_means(const ObstacleMask& mask) {
    const Eigen::Index w = mask.cols();
    // 320 columns split 107/107/106 like the reference thirds; generalized as
    // ceil(w/3) on the left and floor(w/3) on the right.
    const Eigen::Index left_end = (w + 2) / 3;
    const Eigen::Index right_begin = w - w / 3;
    return {mean_bottom_row(mask, 0, left_end), mean_bottom_row(mask, right_begin, w)};
}

Side side_bias(const ObstacleMask& mask) {
    const SideMeans means = side_means(mask);
    return means.left < means.right ? Side::Left : Side::Right;
}

NavDecision decide(double distance_mm, const ObstacleMask& mask,
                   const NavThresholds& thresholds) {
    NavDecision decision;
    decision.distance_mm = distance_mm;
    decision.side_means = side_means(mask);
    if (distance_mm > thresholds.go_straight_above) {
        decision.action = NavAction::GoStraight;
    } else if (distance_mm > thresholds.stop_at_or_below) {
        decision.action = decision.side_means.left < decision.side_means.right
                              ? NavAction::TurnLeft
                              : NavAction::TurnRight;
    } else {
        decision.action = NavAction::Stop;
    }
    return decision;
}

int command_code(NavAction action) {
    switch (action) {
        case NavAction::GoStraight:
            return 1;
        case NavAction::TurnRight:
            return 4;
        case NavAction::TurnLeft:
            return 8;
        case NavAction::Stop:
            return 0;
    }
    return 0;
}

int command_code(const std::string& word) {
    if (word == "front") return 1;
    if (word == "back") return 2;
    if (word == "right") return 4;
    if (word == "left") return 8;
    return 0;  // stop, reverse, anything unknown
}

const char* to_string(NavAction action) {
    switch (action) {
        case NavAction::GoStraight:
            return "GoStraight";
        case NavAction::TurnLeft:
            return "TurnLeft";
        case NavAction::TurnRight:
            return "TurnRight";
        case NavAction::Stop:
            return "Stop";
    }
    return "Stop";
}

}  // namespace wnav
