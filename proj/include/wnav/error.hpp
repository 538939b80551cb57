#pragma once

#include <stdexcept>
#include <string>

namespace wnav {

/// File/format problems: missing files, bad magic, truncated payloads.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Violated preconditions and numeric contract breaks.
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wnav
