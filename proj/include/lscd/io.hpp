#ifndef LSCD_IO_HPP
#define LSCD_IO_HPP

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lscd {

// Index of the first invalid UTF-8 byte, or npos if the string is valid.
std::size_t utf8_invalid_at(std::string_view s);

std::vector<std::string> split_ws(std::string_view line);
std::vector<std::string> split_char(std::string_view line, char sep);

void ascii_lowercase(std::string& s);

// Reads a whole text file line by line (LF or CRLF), calling fn(line_no, line).
// line_no is 1-based. Throws DataError if the file cannot be opened.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::size_t, std::string_view)>& fn);

// Writes content to path atomically: temp file in the same directory + rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Number formatting with a fixed significant-digit count ("%.*g").
std::string format_sig(double value, int digits);

}  // namespace lscd

#endif
