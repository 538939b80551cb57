#include "wnav/calibration.hpp"

#include "wnav/error.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <string>

namespace wnav {
namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

CameraRig read_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path + ": cannot open file");
    }

    std::map<std::string, double> values;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw IoError(path + ": line " + std::to_string(line_no) +
                          ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string text = trim(stripped.substr(eq + 1));
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0') {
            throw IoError(path + ": line " + std::to_string(line_no) +
                          ": non-numeric value for key '" + key + "': '" + text + "'");
        }
        values[key] = value;
    }

    const auto require = [&](const char* key) {
        const auto it = values.find(key);
        if (it == values.end()) {
            throw IoError(path + ": missing required key '" + std::string(key) + "'");
        }
        return it->second;
    };
    const auto optional = [&](const char* key) {
        const auto it = values.find(key);
        return it == values.end() ? 0.0 : it->second;
    };

    CameraRig rig;
    rig.focal_px = require("focal_px");
    rig.baseline_mm = require("baseline_mm");
    rig.cx = require("cx");
    rig.cy = require("cy");
    rig.distortion = {optional("k1"), optional("k2"), optional("p1"), optional("p2")};

    if (rig.focal_px <= 0.0) {
        throw IoError(path + ": focal length must be positive, got " +
                      std::to_string(rig.focal_px));
    }
    if (rig.baseline_mm <= 0.0) {
        throw IoError(path + ": baseline must be positive, got " +
                      std::to_string(rig.baseline_mm));
    }
    return rig;
}

}  // namespace wnav
