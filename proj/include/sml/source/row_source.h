#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sml/catalog/catalog.h"

namespace sml::source {

using Row = std::vector<std::string>;

// Process-wide count of physical records read by every RowSource. Metadata
// operations must leave it unchanged.
std::uint64_t physical_reads();

// Adapter contract: rows of text cells, counted as they are read.
class RowSource {
 public:
  virtual ~RowSource() = default;

  // Next data row, or nullopt at the end.
  std::optional<Row> next();
  std::uint64_t rows_read() const { return rows_read_; }
  // Header names when the source has a header row.
  virtual const std::optional<Row>& header() const = 0;

 protected:
  virtual std::optional<Row> read_row() = 0;
  // Counts a physical record that is not returned, e.g. a header.
  static void count_physical_read();

 private:
  std::uint64_t rows_read_ = 0;
};

// RFC 4180 records: quoted fields may hold the separator, line breaks and
// doubled quotes. Blank lines are skipped; CRLF and LF both end a record.
class CsvReader {
 public:
  CsvReader(std::istream& in, char separator) : in_(in), sep_(separator) {}

  std::optional<Row> next();
  std::uint64_t line() const { return line_; }

 private:
  std::istream& in_;
  char sep_;
  std::uint64_t line_ = 0;
};

class CsvSource : public RowSource {
 public:
  // Throws Error(SOURCE_UNREACHABLE) when the file cannot be opened.
  CsvSource(const std::filesystem::path& path, char separator, bool has_header);

  const std::optional<Row>& header() const override { return header_; }

 protected:
  std::optional<Row> read_row() override;

 private:
  std::ifstream file_;
  CsvReader reader_;
  std::optional<Row> header_;
};

// In-memory rows; counted like physical reads.
class VectorSource : public RowSource {
 public:
  explicit VectorSource(std::vector<Row> rows, std::optional<Row> header = std::nullopt)
      : rows_(std::move(rows)), header_(std::move(header)) {}

  const std::optional<Row>& header() const override { return header_; }

 protected:
  std::optional<Row> read_row() override;

 private:
  std::vector<Row> rows_;
  std::size_t pos_ = 0;
  std::optional<Row> header_;
};

// Opens the physical source of a dataset.
using SourceFactory = std::function<std::unique_ptr<RowSource>(const catalog::DatasetProfile&)>;

// Resolves relative sml:fileLocation values against `data_root`. Databases
// raise Error(NOT_SUPPORTED); a text file without a location or with a
// missing file raises Error(SOURCE_UNREACHABLE).
SourceFactory file_sources(std::filesystem::path data_root);

std::filesystem::path resolve_location(const catalog::DatasetProfile& d, const std::filesystem::path& data_root);

// RFC 4180 field quoting: quoted when the field holds the separator, a quote
// or a line break.
std::string csv_field(std::string_view text, char separator);

}  // namespace sml::source
