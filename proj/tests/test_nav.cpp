#include "wnav/nav.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace wnav;

namespace {

ObstacleMask block_mask(int row0, int row1, int col0, int col1) {
    ObstacleMask mask = ObstacleMask::Zero(240, 320);
    mask.block(row0, col0, row1 - row0 + 1, col1 - col0 + 1).setConstant(1);
    return mask;
}

}  // namespace

TEST_SUITE("nav") {

TEST_CASE("side_bias: empty mask ties to the right") {
    const ObstacleMask empty = ObstacleMask::Zero(240, 320);
    const SideMeans means = side_means(empty);
    CHECK(means.left == 0.0);
    CHECK(means.right == 0.0);
    CHECK(side_bias(empty) == Side::Right);
}

TEST_CASE("side_bias favors the emptier side") {
    // Obstacles fill the right third rows 150..210: right mean high, left 0.
    const ObstacleMask right_blocked = block_mask(150, 210, 220, 300);
    CHECK(side_means(right_blocked).left == 0.0);
    CHECK(side_means(right_blocked).right > 0.0);
    CHECK(side_bias(right_blocked) == Side::Left);

    const ObstacleMask mirrored = mirror_horizontal(right_blocked);
    CHECK(side_bias(mirrored) == Side::Right);
}

TEST_CASE("side_bias ignores rows below 210") {
    const ObstacleMask low = block_mask(220, 239, 220, 300);
    CHECK(side_means(low).right == 0.0);
    CHECK(side_bias(low) == Side::Right);
}

TEST_CASE("decide reproduces the threshold table") {
    const ObstacleMask mask = ObstacleMask::Zero(240, 320);
    CHECK(decide(599.0, mask).action == NavAction::Stop);
    CHECK(decide(600.0, mask).action == NavAction::Stop);
    CHECK(decide(601.0, mask).action == NavAction::TurnRight);  // tie side -> Right
    CHECK(decide(750.0, mask).action == NavAction::TurnRight);
    CHECK(decide(751.0, mask).action == NavAction::GoStraight);
    CHECK(decide(5000.0, mask).action == NavAction::GoStraight);
}

TEST_CASE("turns steer away from the blocked side") {
    const ObstacleMask right_blocked = block_mask(150, 210, 220, 300);
    CHECK(decide(700.0, right_blocked).action == NavAction::TurnLeft);
    CHECK(decide(700.0, mirror_horizontal(right_blocked)).action == NavAction::TurnRight);
    CHECK(decide(500.0, right_blocked).action == NavAction::Stop);
    CHECK(decide(5000.0, right_blocked).action == NavAction::GoStraight);
}

TEST_CASE("one-sided masks always mirror-swap the turn") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        // Random blob strictly inside one outer third (and its mirror image
        // strictly inside the other), rows 100..205.
        const bool on_right = rng() % 2 == 0;
        const int col0 = on_right ? 220 + static_cast<int>(rng() % 40) : 10 + static_cast<int>(rng() % 40);
        const int width = 10 + static_cast<int>(rng() % 30);
        const int row0 = 100 + static_cast<int>(rng() % 60);
        const int height = 10 + static_cast<int>(rng() % 40);
        const ObstacleMask mask = block_mask(row0, row0 + height, col0, col0 + width);

        const NavDecision original = decide(700.0, mask);
        const NavDecision mirrored = decide(700.0, mirror_horizontal(mask));
        if (original.action == NavAction::TurnLeft) {
            CHECK(mirrored.action == NavAction::TurnRight);
        } else {
            CHECK(original.action == NavAction::TurnRight);
            CHECK(mirrored.action == NavAction::TurnLeft);
        }
    }
}

TEST_CASE("command codes match the LED mapping") {
    CHECK(command_code("front") == 1);
    CHECK(command_code("back") == 2);
    CHECK(command_code("right") == 4);
    CHECK(command_code("left") == 8);
    CHECK(command_code("stop") == 0);
    CHECK(command_code("reverse") == 0);
    CHECK(command_code("mumble") == 0);

    CHECK(command_code(NavAction::GoStraight) == 1);
    CHECK(command_code(NavAction::TurnRight) == 4);
    CHECK(command_code(NavAction::TurnLeft) == 8);
    CHECK(command_code(NavAction::Stop) == 0);

    const std::set<int> allowed = {0, 1, 2, 4, 8};
    for (const char* word : {"front", "back", "right", "left", "reverse", "stop", "??"}) {
        CHECK(allowed.count(command_code(word)) == 1);
    }
}

TEST_CASE("action names are stable") {
    CHECK(std::string(to_string(NavAction::GoStraight)) == "GoStraight");
    CHECK(std::string(to_string(NavAction::Stop)) == "Stop");
}

}  // TEST_SUITE
