#pragma once

// Small helpers shared by the TSV readers and writers.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pcl::io {

// Splits on '\t' without collapsing empty fields.
std::vector<std::string_view> split_tabs(std::string_view line);

// Strips a trailing '\r' so CRLF files parse like LF files.
std::string_view chomp(std::string_view line);

// Reads every line of a file. Throws IoError when the file cannot be opened.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Reads a whole file as bytes.
std::string read_file(const std::filesystem::path& path);

// Writes bytes atomically enough for a batch pipeline: truncate and write,
// then check the stream. Parent directories are created.
void write_file(const std::filesystem::path& path, std::string_view contents);

// Escaping for free text stored in a TSV cell: backslash, tab, newline and
// carriage return become \\, \t, \n, \r.
std::string escape_cell(std::string_view text);
std::string unescape_cell(std::string_view cell);

// Strict number parsing: the whole field must be consumed.
bool parse_double(std::string_view field, double& out);
bool parse_int(std::string_view field, long long& out);

// "%.<decimals>f" formatting with the C locale.
std::string format_fixed(double value, int decimals);

// Shortest representation that parses back to the same double.
std::string format_exact(double value);

// 64-bit FNV-1a, used for stable feature hashing and file checksums.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

std::string trim(std::string_view text);
std::string to_lower_ascii(std::string_view text);

}  // namespace pcl::io
