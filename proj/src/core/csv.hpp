#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ews {

// Comma-split with trailing-\r trim; the file schemas carry no quoting.
std::vector<std::string> split_csv_line(std::string_view line);
std::string join_csv(const std::vector<std::string>& fields);

// Splits on '\n'; drops a trailing empty segment so "a\nb\n" gives {a, b}.
std::vector<std::string> split_lines(std::string_view text);

// Strict full-token numeric parse. Throws Error(InvalidArgument).
double parse_double(std::string_view text);
long parse_long(std::string_view text);

// 17 significant digits; re-parsing reproduces the double bit-exactly.
std::string format_double(double value);

std::string read_file(const std::string& path);  // throws Error(FileNotFound)

// Write via temp file + rename so failures never leave partial output.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace ews
