#include "text_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "apseq/error.hpp"

namespace apseq::detail {

std::string fixed6(double v) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.6f", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

bool representable6(double v) {
  if (!std::isfinite(v)) return false;
  const std::string s = fixed6(v);
  double back = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), back);
  return back == v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view tok, std::string_view what) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (tok.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(tok) + "'");
  }
  return v;
}

unsigned long parse_uint(std::string_view tok, std::string_view what) {
  unsigned long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(tok) + "'");
  }
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

bool LineReader::next(std::string_view& line) {
  prev_pos_ = pos_;
  prev_line_no_ = line_no_;
  while (pos_ < text_.size()) {
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view raw = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_no_;
    raw = trim(raw);
    if (raw.empty() || raw.front() == '#') continue;
    line = raw;
    return true;
  }
  pos_ = text_.size();
  return false;
}

void LineReader::unread() {
  pos_ = prev_pos_;
  line_no_ = prev_line_no_;
}

void parse_fail(const LineReader& reader, const std::string& msg) {
  throw ParseError("line " + std::to_string(reader.line_number()) + ": " + msg);
}

}  // namespace apseq::detail
