#pragma once

#include <forbconf/bin_matrix.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace forbconf {

// Text format:
//   m n
//   <m lines of exactly n characters from {0,1}>
// Lines starting with '#' and blank lines are skipped anywhere.

/// Distinct columns in canonical order, each repeated by its multiplicity.
std::string format_matrix(const BinMatrix & m);

/// Parse errors name the offending line, e.g. "ragged row at line 3".
BinMatrix parse_matrix(std::string_view text);

BinMatrix read_matrix_file(const std::filesystem::path & path);

}  // namespace forbconf
