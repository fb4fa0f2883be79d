#pragma once

#include <forbconf/bin_matrix.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace forbconf::cli {

/// Exit statuses of the command-line tool.
enum Status : int { Ok = 0, CheckFailed = 1, UsageError = 2 };

/// K:k, F:a,b,c,d, tF:t,a,b,c,d, I:k, Ic:k, T:k or @path.
BinMatrix parse_family_literal(std::string_view text);

/// A literal as above, or a bare path to a matrix file.
BinMatrix parse_matrix_argument(std::string_view text);

/// args excludes the program name. Rows in reports are 1-based.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace forbconf::cli
