#pragma once

#include <string>
#include <string_view>

namespace darank {

/// Lowercase hex SHA-256 of `data`. Used for prompt ids, replay fixture
/// names and provenance hashes.
std::string sha256_hex(std::string_view data);

/// sha256_hex of the file contents; throws Error(IoError) when unreadable.
std::string file_sha256_hex(const std::string& path);

}  // namespace darank
