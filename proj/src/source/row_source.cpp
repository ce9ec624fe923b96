#include "sml/source/row_source.h"

#include <atomic>

namespace sml::source {

namespace {

std::atomic<std::uint64_t> g_physical_reads{0};

}  // namespace

std::uint64_t physical_reads() { return g_physical_reads.load(); }

void RowSource::count_physical_read() { g_physical_reads.fetch_add(1); }

std::optional<Row> RowSource::next() {
  auto row = read_row();
  if (row) {
    ++rows_read_;
    count_physical_read();
  }
  return row;
}

std::optional<Row> CsvReader::next() {
  while (true) {
    Row row;
    std::string field;
    bool quoted = false;
    bool any = false;  // something other than a line break was read
    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
      char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field += '"';
          } else {
            quoted = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field += ch;
        }
        continue;
      }
      if (ch == '"') {
        quoted = true;
        any = true;
      } else if (ch == sep_) {
        row.push_back(std::move(field));
        field.clear();
        any = true;
      } else if (ch == '\r' && in_.peek() == '\n') {
        continue;
      } else if (ch == '\n') {
        break;
      } else {
        field += ch;
        any = true;
      }
    }
    bool eof = c == std::char_traits<char>::eof();
    ++line_;
    if (!any && field.empty()) {
      if (eof) return std::nullopt;
      continue;  // blank line
    }
    if (line_ == 1 && row.empty() && field.starts_with("\xEF\xBB\xBF")) field.erase(0, 3);
    row.push_back(std::move(field));
    return row;
  }
}

CsvSource::CsvSource(const std::filesystem::path& path, char separator, bool has_header)
    : file_(path, std::ios::binary), reader_(file_, separator) {
  if (!file_) throw Error(ErrorCode::SOURCE_UNREACHABLE, "cannot open " + path.string());
  if (has_header) {
    header_ = reader_.next();
    if (header_) count_physical_read();
  }
}

std::optional<Row> CsvSource::read_row() { return reader_.next(); }

std::optional<Row> VectorSource::read_row() {
  if (pos_ >= rows_.size()) return std::nullopt;
  return rows_[pos_++];
}

std::filesystem::path resolve_location(const catalog::DatasetProfile& d, const std::filesystem::path& data_root) {
  if (!d.access || d.access->kind != catalog::AccessKind::TEXT_FILE) {
    throw Error(ErrorCode::NOT_SUPPORTED, "dataset " + d.iri.value + " is not a text file");
  }
  if (!d.access->file_location) {
    throw Error(ErrorCode::SOURCE_UNREACHABLE, "dataset " + d.iri.value + " has no sml:fileLocation");
  }
  std::string loc = *d.access->file_location;
  if (loc.starts_with("file://")) loc.erase(0, 7);
  std::filesystem::path p(loc);
  return p.is_absolute() || data_root.empty() ? p : data_root / p;
}

SourceFactory file_sources(std::filesystem::path data_root) {
  return [root = std::move(data_root)](const catalog::DatasetProfile& d) -> std::unique_ptr<RowSource> {
    if (!d.access) throw Error(ErrorCode::SOURCE_UNREACHABLE, "dataset " + d.iri.value + " has no access descriptor");
    if (d.access->kind == catalog::AccessKind::DATABASE) {
      throw Error(ErrorCode::NOT_SUPPORTED, "database sources are not supported: " + d.iri.value);
    }
    auto path = resolve_location(d, root);
    return std::make_unique<CsvSource>(path, d.access->separator_char(), d.access->header());
  };
}

std::string csv_field(std::string_view text, char separator) {
  if (text.find_first_of(std::string{separator, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace sml::source
