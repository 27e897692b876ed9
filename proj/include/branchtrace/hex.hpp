#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace branchtrace {

/// Lowercase hex, two characters per byte.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Accepts upper or lower case. Throws DomainError on odd length or a
/// non-hex character.
std::vector<std::uint8_t> from_hex(std::string_view text);

}  // namespace branchtrace
