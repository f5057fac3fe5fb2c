#include "tsfactor/matrix_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace tsfactor {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw IoError("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string to_csv(const Matrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 24);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix parse_csv(const std::string& text, const std::string& origin) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::size_t end = comma == std::string::npos ? line.size() : comma;
      std::size_t lo = start;
      std::size_t hi = end;
      while (lo < hi && (line[lo] == ' ' || line[lo] == '\t')) ++lo;
      while (hi > lo && (line[hi - 1] == ' ' || line[hi - 1] == '\t')) --hi;
      double v = 0.0;
      const char* first = line.data() + lo;
      const char* last = line.data() + hi;
      if (lo < hi && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (lo == hi || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw IoError(origin + ":" + std::to_string(line_no) + ": invalid number '" +
                      line.substr(lo, hi - lo) + "'");
      }
      values.push_back(v);
      ++count;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw IoError(origin + ":" + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                    " columns, found " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw IoError(origin + ": empty matrix file");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * cols + j];
    }
  }
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buf.str();
}

void write_csv(const std::filesystem::path& path, const Matrix& m) { write_text(path, to_csv(m)); }

Matrix read_csv(const std::filesystem::path& path) {
  return parse_csv(read_text(path), path.string());
}

}  // namespace tsfactor
