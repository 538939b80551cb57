#include "wnav/dtw.hpp"

#include "wnav/error.hpp"

#include <algorithm>
#include <limits>

namespace wnav {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double local_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) {
        throw ContractError("local_distance: dimension mismatch, " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
    }
    return (a - b).norm();
}

DtwResult dtw_distance(const MelMatrix& w, const MelMatrix& x, DtwMode mode) {
    const int tw = static_cast<int>(w.cols());
    const int tx = static_cast<int>(x.cols());
    if (tw < 1 || tx < 1) {
        throw ContractError("dtw_distance: sequences must be non-empty");
    }
    if (w.rows() != x.rows()) {
        throw ContractError("dtw_distance: channel counts differ, " + std::to_string(w.rows()) +
                            " vs " + std::to_string(x.rows()));
    }

    Eigen::MatrixXd cost(tw, tx);
    for (int i = 0; i < tw; ++i) {
        for (int j = 0; j < tx; ++j) {
            cost(i, j) = (w.col(i) - x.col(j)).norm();
        }
    }

    DtwResult result;
    result.backpointers.setConstant(tw, tx, kDtwUnreachable);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Constant(tw, tx, kInf);

    acc(0, 0) = cost(0, 0);
    result.backpointers(0, 0) = kDtwStepOrigin;

    if (mode == DtwMode::Symmetric) {
        for (int i = 1; i < tw; ++i) {  // first column, vertical only
            acc(i, 0) = acc(i - 1, 0) + cost(i, 0);
            result.backpointers(i, 0) = kDtwStepUp;
        }
        for (int j = 1; j < tx; ++j) {
            acc(0, j) = acc(0, j - 1) + cost(0, j);  // first row, horizontal only
            result.backpointers(0, j) = kDtwStepHorizontal;
            for (int i = 1; i < tw; ++i) {
                const double via_horizontal = acc(i, j - 1) + cost(i, j);
                const double via_diagonal = acc(i - 1, j - 1) + 2.0 * cost(i, j);
                const double via_vertical = acc(i - 1, j) + cost(i, j);
                double best = via_horizontal;
                std::int8_t step = kDtwStepHorizontal;
                if (via_diagonal < best) {
                    best = via_diagonal;
                    step = kDtwStepDiagonal;
                }
                if (via_vertical < best) {
                    best = via_vertical;
                    step = kDtwStepUp;
                }
                acc(i, j) = best;
                result.backpointers(i, j) = step;
            }
        }
    } else {
        // Column 0 is unreachable except at the origin: every move comes from
        // the previous column.
        for (int j = 1; j < tx; ++j) {
            for (int i = 0; i < tw; ++i) {
                double best = acc(i, j - 1);
                std::int8_t step = kDtwStepHorizontal;
                if (i >= 1 && acc(i - 1, j - 1) < best) {
                    best = acc(i - 1, j - 1);
                    step = kDtwStepDiagonal;
                }
                if (i >= 2 && acc(i - 2, j - 1) < best) {
                    best = acc(i - 2, j - 1);
                    step = kDtwStepUp;
                }
                if (best < kInf) {
                    acc(i, j) = best + cost(i, j);
                    result.backpointers(i, j) = step;
                }
            }
        }
    }

    result.distance = acc(tw - 1, tx - 1);
    if (result.distance < kInf) {
        int i = tw - 1, j = tx - 1;
        while (true) {
            result.path.emplace_back(i, j);
            const std::int8_t step = result.backpointers(i, j);
            if (step == kDtwStepOrigin) break;
            switch (step) {
                case kDtwStepHorizontal:
                    j -= 1;
                    break;
                case kDtwStepDiagonal:
                    i -= 1;
                    j -= 1;
                    break;
                default:  // kDtwStepUp
                    if (mode == DtwMode::Symmetric) {
                        i -= 1;
                    } else {
                        i -= 2;
                        j -= 1;
                    }
                    break;
            }
        }
        std::reverse(result.path.begin(), result.path.end());
    }
    return result;
}

ClassifyResult classify(const MelMatrix& unknown, const TemplateLibrary& library, DtwMode mode) {
    if (library.entries.empty()) {
        throw ContractError("classify: template library is empty");
    }
    for (const auto& entry : library.entries) {
        if (entry.features.rows() != unknown.rows()) {
            throw ContractError("classify: template '" + entry.label + "' has " +
                                std::to_string(entry.features.rows()) +
                                " channels, unknown has " + std::to_string(unknown.rows()));
        }
    }

    ClassifyResult result;
    std::size_t best = 0;
    for (std::size_t t = 0; t < library.entries.size(); ++t) {
        const double distance =
            dtw_distance(unknown, library.entries[t].features, mode).distance;
        result.all_distances.emplace_back(library.entries[t].label, distance);
        if (distance < result.all_distances[best].second) {
            best = t;
        }
    }
    result.label = result.all_distances[best].first;
    result.distance = result.all_distances[best].second;
    return result;
}

}  // namespace wnav
