#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "longmem/fraccoeff.hpp"
#include "longmem/toeplitz.hpp"

namespace longmem {

/// Thrown for unreadable files and malformed CSV/JSON content.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal representation ('.' separator, locale free).
std::string format_double(double x);

/// {"kind": "FI"|"FARIMA", "d": .., "ar": [..], "ma": [..], "sigma2": ..}.
/// Missing ar/ma/sigma2 default to empty/empty/1.
std::string model_to_json(const LongMemoryModel& model);
LongMemoryModel model_from_json(std::string_view text);

/// Comma-separated table with numeric cells. Lines starting with '#' are
/// comments and precede the header.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws IoError if absent.
  std::size_t column(std::string_view name) const;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it, so
/// readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// `index,value` dump of a coefficient or autocovariance sequence.
CsvTable index_value_table(std::span<const double> values);

/// Series values from a CSV with a `value` column (an `index` column, if any,
/// is ignored).
std::vector<double> read_series_csv(const std::filesystem::path& path);

/// `j,phi_j` CSV at `csv_path` plus a `{k, v, partials}` sidecar at
/// `csv_path` with ".json" appended.
void write_ark_model(const std::filesystem::path& csv_path, const ArkModel& model);
ArkModel read_ark_model(const std::filesystem::path& csv_path);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace longmem
