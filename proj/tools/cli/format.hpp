#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace nsfts::cli {

/// Shortest decimal that round-trips to the same double; "nan"/"inf"/"-inf" otherwise.
std::string format_double(double v);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Replaces characters outside [A-Za-z0-9._-] with '_'.
std::string sanitize_filename(std::string_view name);

}  // namespace nsfts::cli
