#pragma once

#include <cstdint>
#include <string>

namespace grpx {

/// SHA-256 digest of a byte string, as lowercase hex.
std::string sha256_hex(const std::string& data);

}  // namespace grpx
