#pragma once

#include "tsfactor/linalg.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace tsfactor {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, general notation, '.' decimal point. Parsing the
/// result back yields the same double.
std::string format_double(double value);

/// Matrix CSV: one line per row, ',' delimiter, no header, '\n' line endings.
std::string to_csv(const Matrix& m);
Matrix parse_csv(const std::string& text, const std::string& origin = "<memory>");

void write_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace tsfactor
