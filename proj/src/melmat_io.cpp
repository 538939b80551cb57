#include "wnav/melmat_io.hpp"

#include "wnav/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace wnav {

MelMatrix read_template(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path + ": cannot open file");
    }

    std::string magic;
    long channels = 0, frames = 0;
    if (!(in >> magic >> channels >> frames) || magic != "MELMAT") {
        throw IoError(path + ": malformed header, expected 'MELMAT <channels> <frames>'");
    }
    if (channels < 1 || frames < 1) {
        throw IoError(path + ": header dimensions must be positive, got " +
                      std::to_string(channels) + "x" + std::to_string(frames));
    }
    std::string rest;
    std::getline(in, rest);  // discard remainder of the header line

    MelMatrix m(channels, frames);
    std::string line;
    for (long c = 0; c < channels; ++c) {
        if (!std::getline(in, line)) {
            throw IoError(path + ": body ended after " + std::to_string(c) +
                          " rows, header declared " + std::to_string(channels));
        }
        std::istringstream row(line);
        double value = 0.0;
        long k = 0;
        while (k < frames && (row >> value)) {
            m(c, k++) = value;
        }
        std::string extra;
        if (k != frames || (row >> extra)) {
            throw IoError(path + ": row " + std::to_string(c + 1) + " has wrong element count, " +
                          "header declared " + std::to_string(frames));
        }
    }
    return m;
}

void write_template(const std::string& path, const MelMatrix& features) {
    if (features.rows() < 1 || features.cols() < 1) {
        throw ContractError("write_template: matrix must be non-empty");
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError(path + ": cannot open file for writing");
    }
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "MELMAT " << features.rows() << " " << features.cols() << "\n";
    for (Eigen::Index c = 0; c < features.rows(); ++c) {
        for (Eigen::Index k = 0; k < features.cols(); ++k) {
            if (k) out << " ";
            out << features(c, k);
        }
        out << "\n";
    }
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

TemplateLibrary load_template_library(const std::string& directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory)) {
        throw IoError(directory + ": not a directory");
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".melmat") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw IoError(directory + ": no *.melmat templates found");
    }

    TemplateLibrary library;
    std::set<std::string> seen;
    for (const auto& file : files) {
        TemplateEntry entry{file.stem().string(), read_template(file.string())};
        if (!seen.insert(entry.label).second) {
            throw IoError(directory + ": duplicate template label '" + entry.label + "'");
        }
        if (!library.entries.empty() &&
            entry.features.rows() != library.entries.front().features.rows()) {
            throw IoError(file.string() + ": channel count " +
                          std::to_string(entry.features.rows()) + " differs from library's " +
                          std::to_string(library.entries.front().features.rows()));
        }
        library.entries.push_back(std::move(entry));
    }
    return library;
}

}  // namespace wnav
