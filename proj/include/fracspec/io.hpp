#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace fracspec {

using Json = nlohmann::ordered_json;

/// %.17g formatting; non-finite values print as inf / -inf / nan.
std::string format_double(double value);

/// Serializes JSON with floats at 17 significant digits and non-finite floats
/// as null. Key order is insertion order.
std::string dump_json(const Json& value, int indent = 2);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// CSV with a mandatory header row, ',' separators and '\n' line endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  const std::string& text() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Row-major little-endian float64 dump of a matrix.
std::string matrix_bytes(const Eigen::MatrixXd& a);

}  // namespace fracspec
