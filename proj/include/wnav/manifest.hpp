#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace wnav {

/// FNV-1a over a byte string; the manifest's input-digest primitive.
std::uint64_t fnv1a64(std::string_view bytes);

/// "fnv1a64:<16 hex digits>" of a file's contents.
std::string file_digest(const std::string& path);

/// Writes the run manifest: subcommand, every effective parameter, and a
/// digest per input file. Runs with equal manifests produce identical outputs.
void write_manifest(const std::string& path, const std::string& command,
                    const nlohmann::json& parameters, const nlohmann::json& input_digests);

}  // namespace wnav
