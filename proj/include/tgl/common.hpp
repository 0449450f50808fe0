#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tgl {

// Thrown when input text (tree expressions, .tgl files, sign matrices) is malformed.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an instance exceeds the documented size contract of an operation.
struct size_limit_error : std::runtime_error {
    explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Number of unordered pairs among n items.
inline long long pair_count(long long n) { return n * (n - 1) / 2; }

enum class Side { left, right };

} // namespace tgl
