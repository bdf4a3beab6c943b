#pragma once

// Internal helpers for the line-oriented text formats.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace apseq::detail {

// Fixed-point with exactly six fractional digits.
std::string fixed6(double v);

// True when v survives a round trip through fixed6 unchanged.
bool representable6(double v);

std::vector<std::string_view> split_ws(std::string_view line);
std::string_view trim(std::string_view s);

// Strict numeric parsing; the whole token must be consumed. Throw ParseError.
double parse_real(std::string_view tok, std::string_view what);
unsigned long parse_uint(std::string_view tok, std::string_view what);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Walks the non-blank lines of a text blob; '#' starts a comment line.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-blank, non-comment line (trimmed), or false at end of input.
  bool next(std::string_view& line);
  // Pushes back the most recent line so the next call returns it again.
  void unread();
  std::size_t line_number() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t prev_pos_ = 0;
  std::size_t line_no_ = 0;
  std::size_t prev_line_no_ = 0;
};

[[noreturn]] void parse_fail(const LineReader& reader, const std::string& msg);

}  // namespace apseq::detail
