#pragma once

#include <filesystem>
#include <string_view>

namespace rlk::detail {

/// Writes to a sibling temporary and renames it over `path`. Throws
/// rlk::Error when the directory is not writable.
void
write_file_atomically(const std::filesystem::path& path, std::string_view content);

} // namespace rlk::detail
