#include "wnav/manifest.hpp"

#include "wnav/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace wnav {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (const char c : bytes) {
        hash ^= static_cast<std::uint8_t>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path + ": cannot open file for digest");
    }
    std::ostringstream contents;
    contents << in.rdbuf();
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0')
        << fnv1a64(contents.str());
    return out.str();
}

void write_manifest(const std::string& path, const std::string& command,
                    const nlohmann::json& parameters, const nlohmann::json& input_digests) {
    nlohmann::json manifest;
    manifest["tool"] = "wnav";
    manifest["command"] = command;
    manifest["parameters"] = parameters;
    manifest["inputs"] = input_digests;
    std::ofstream out(path);
    if (!out) {
        throw IoError(path + ": cannot open file for writing");
    }
    out << manifest.dump(2) << "\n";
    if (!out) {
        throw IoError(path + ": write failed");
    }
}

}  // namespace wnav
