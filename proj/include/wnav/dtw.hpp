#pragma once

#include "wnav/melmat_io.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace wnav {

/// Local path rules for the alignment grid (i over W frames, j over X frames).
/// Symmetric: predecessors (i,j-1), (i-1,j-1) with weight 2, (i-1,j).
/// Asymmetric: predecessors (i,j-1), (i-1,j-1), (i-2,j-1), unit weights; every
/// step consumes one X frame, and only (0,0) enters column 0.
enum class DtwMode { Symmetric, Asymmetric };

/// Backpointer codes stored per grid cell.
enum : std::int8_t {
    kDtwStepHorizontal = 0,  // from (i, j-1)
    kDtwStepDiagonal = 1,    // from (i-1, j-1)
    kDtwStepUp = 2,          // Symmetric: from (i-1, j); Asymmetric: from (i-2, j-1)
    kDtwStepOrigin = -1,
    kDtwUnreachable = -2,
};

struct DtwResult {
    double distance = 0.0;
    /// Grid points from (0,0) to (TW-1, TX-1); empty when no legal path exists.
    std::vector<std::pair<int, int>> path;
    Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic> backpointers;  // TW x TX
};

/// Euclidean distance between two feature vectors of equal dimension.
double local_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Accumulated alignment cost between frame sequences W (columns of `w`) and
/// X (columns of `x`), with full backpointer grid and backtracked path.
DtwResult dtw_distance(const MelMatrix& w, const MelMatrix& x, DtwMode mode);

struct ClassifyResult {
    std::string label;
    double distance = 0.0;
    std::vector<std::pair<std::string, double>> all_distances;
};

/// Minimum-distance word classification; ties keep the earliest library entry.
ClassifyResult classify(const MelMatrix& unknown, const TemplateLibrary& library, DtwMode mode);

}  // namespace wnav
