#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace critsamp {

/// Shortest text form that round-trips a 64-bit double (printf %.17g).
std::string format_double(double v);

/// FNV-1a 64-bit content hash; hex form is 16 lowercase digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and renames into place, so an
/// interrupted run never leaves a partial artifact under `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace critsamp
