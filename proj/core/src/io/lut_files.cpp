// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/io/lut_files.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "adalut/errors.hpp"

namespace adalut::io {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open LUT file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void append_row(std::string& out, float r, float g, float b) {
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", r, g, b);
  out.append(buf, static_cast<std::size_t>(n));
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_number(std::string_view tok, int line_no) {
  // strtod over a bounded copy: from_chars for floating point is not portable yet.
  const std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw FormatError("line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  return v;
}

int parse_size(std::string_view tok, int line_no) {
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw FormatError("line " + std::to_string(line_no) + ": bad size '" + std::string(tok) + "'");
  return v;
}

bool is_comment_or_blank(const std::vector<std::string_view>& toks) {
  return toks.empty() || toks.front().front() == '#';
}

}  // namespace

std::string format_cube(const Lut3D& lut, std::string_view title) {
  std::string out;
  if (!title.empty()) out += "TITLE \"" + std::string(title) + "\"\n";
  out += "LUT_3D_SIZE " + std::to_string(lut.size()) + "\n";
  const int n = lut.size();
  for (int b = 0; b < n; ++b)
    for (int g = 0; g < n; ++g)
      for (int r = 0; r < n; ++r) append_row(out, lut.at(0, r, g, b), lut.at(1, r, g, b), lut.at(2, r, g, b));
  return out;
}

Lut3D parse_cube(std::string_view text) {
  int size = 0;
  std::vector<float> rows;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto toks = tokens(line);
    if (is_comment_or_blank(toks)) continue;
    const std::string_view key = toks.front();
    if (key == "TITLE") continue;
    if (key == "LUT_1D_SIZE") throw FormatError("1D .cube files are not supported; use the SEPLUT1D format");
    if (key == "LUT_3D_SIZE") {
      if (toks.size() != 2) throw FormatError("line " + std::to_string(line_no) + ": malformed LUT_3D_SIZE");
      size = parse_size(toks[1], line_no);
      if (size < 2) throw InvalidSizeError("LUT_3D_SIZE must be >= 2");
      continue;
    }
    if (key == "DOMAIN_MIN" || key == "DOMAIN_MAX") {
      const double expect = key == "DOMAIN_MIN" ? 0.0 : 1.0;
      if (toks.size() != 4) throw FormatError("line " + std::to_string(line_no) + ": malformed " + std::string(key));
      for (int i = 1; i < 4; ++i)
        if (parse_number(toks[i], line_no) != expect)
          throw FormatError("only the unit input domain [0, 1] is supported");
      continue;
    }
    if (toks.size() != 3) throw FormatError("line " + std::to_string(line_no) + ": expected three values");
    if (size == 0) throw FormatError("LUT data before LUT_3D_SIZE");
    for (const auto& t : toks) rows.push_back(static_cast<float>(parse_number(t, line_no)));
  }
  if (size == 0) throw FormatError("missing LUT_3D_SIZE");
  const std::size_t n = static_cast<std::size_t>(size);
  if (rows.size() != 3 * n * n * n)
    throw FormatError("expected " + std::to_string(n * n * n) + " rows, found " + std::to_string(rows.size() / 3));

  Lut3D lut(size);
  std::size_t k = 0;
  for (int b = 0; b < size; ++b)
    for (int g = 0; g < size; ++g)
      for (int r = 0; r < size; ++r, k += 3) {
        lut.at(0, r, g, b) = rows[k];
        lut.at(1, r, g, b) = rows[k + 1];
        lut.at(2, r, g, b) = rows[k + 2];
      }
  return lut;
}

void write_cube(const std::filesystem::path& path, const Lut3D& lut, std::string_view title) {
  write_text(path, format_cube(lut, title));
}

Lut3D read_cube(const std::filesystem::path& path) { return parse_cube(read_text(path)); }

std::string format_lut1d(const Lut1D& lut) {
  std::string out = "SEPLUT1D " + std::to_string(lut.size()) + "\n";
  for (int i = 0; i < lut.size(); ++i) append_row(out, lut.at(0, i), lut.at(1, i), lut.at(2, i));
  return out;
}

Lut1D parse_lut1d(std::string_view text) {
  int size = 0;
  std::vector<float> rows;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto toks = tokens(line);
    if (is_comment_or_blank(toks)) continue;
    if (size == 0) {
      if (toks.size() != 2 || toks[0] != "SEPLUT1D") throw FormatError("missing SEPLUT1D header");
      size = parse_size(toks[1], line_no);
      if (size < 2) throw InvalidSizeError("1D LUT size must be >= 2");
      continue;
    }
    if (toks.size() != 3) throw FormatError("line " + std::to_string(line_no) + ": expected three values");
    for (const auto& t : toks) rows.push_back(static_cast<float>(parse_number(t, line_no)));
  }
  if (size == 0) throw FormatError("missing SEPLUT1D header");
  if (rows.size() != 3 * static_cast<std::size_t>(size))
    throw FormatError("expected " + std::to_string(size) + " rows, found " + std::to_string(rows.size() / 3));
  Lut1D lut(size);
  for (int i = 0; i < size; ++i)
    for (int c = 0; c < kChannels; ++c) lut.at(c, i) = rows[static_cast<std::size_t>(i) * 3 + c];
  return lut;
}

void write_lut1d(const std::filesystem::path& path, const Lut1D& lut) { write_text(path, format_lut1d(lut)); }

Lut1D read_lut1d(const std::filesystem::path& path) { return parse_lut1d(read_text(path)); }

}  // namespace adalut::io
