#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace wnav {

/// Channels x frames matrix of normalized log-mel coefficients. This is the
/// unit of speech features and of stored word templates.
using MelMatrix = Eigen::MatrixXd;

/// Text template format:
///   line 1: MELMAT <channels> <frames>
///   then <channels> lines of <frames> decimal floats.
/// Values survive a write/read round trip exactly (17 significant digits).
MelMatrix read_template(const std::string& path);
void write_template(const std::string& path, const MelMatrix& features);

struct TemplateEntry {
    std::string label;
    MelMatrix features;
};

/// Ordered word prototypes; order decides argmin ties in classification.
struct TemplateLibrary {
    std::vector<TemplateEntry> entries;
};

/// Loads every *.melmat file in a directory, label = file stem, ordered by
/// filename. All entries must share one channel count; labels must be unique.
TemplateLibrary load_template_library(const std::string& directory);

}  // namespace wnav
