#pragma once

#include "wnav/image.hpp"

#include <string>

namespace wnav {

enum class NavAction { GoStraight, TurnLeft, TurnRight, Stop };
enum class Side { Left, Right };

/// Mean bottom-most obstacle row over the left and right column thirds
/// (middle third is ignored). Larger mean = obstacles reach closer.
struct SideMeans {
    double left = 0.0;
    double right = 0.0;
};

struct NavDecision {
    NavAction action = NavAction::Stop;
    double distance_mm = 0.0;
    SideMeans side_means;
};

/// Distance thresholds of the control law (mm).
struct NavThresholds {
    double go_straight_above = 750.0;  // D > this: go straight
    double stop_at_or_below = 600.0;   // D <= this: stop; between: turn
};

SideMeans side_means(const ObstacleMask& mask);

/// Side with the smaller mean (fewer/farther obstacles) is the safer one to
/// turn toward; exact tie goes Right.
Side side_bias(const ObstacleMask& mask);

/// Control law: D > 750 go straight; 600 < D <= 750 turn toward side_bias;
/// D <= 600 stop.
NavDecision decide(double distance_mm, const ObstacleMask& mask, const NavThresholds& = {});

/// 4-bit command codes: front/GoStraight=1, back=2, right/TurnRight=4,
/// left/TurnLeft=8, stop/Stop/reverse=0 (and 0 for anything unknown).
int command_code(NavAction action);
int command_code(const std::string& word);

const char* to_string(NavAction action);

}  // namespace wnav
