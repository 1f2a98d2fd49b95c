#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jumpconv {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form.
std::string format_real(double x);
// Like format_real, but integral values keep a trailing ".0" (e.g. "1.0").
std::string format_param(double x);

// Writes to a sibling temporary file, then renames over `target`.
void write_file_atomic(const std::filesystem::path& target, std::string_view content);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace jumpconv
