#include "lvdyn/series_io.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "lvdyn/error.hpp"

namespace lvdyn {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) fail(ErrorKind::ParseError, where + ": unterminated quote");
  fields.push_back(trim(cur));
  return fields;
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    fail(ErrorKind::ParseError, where + ": cannot parse '" + text + "' as a number");
  }
  return value;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& source) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  std::string known;
  for (const auto& h : header) known += (known.empty() ? "" : ", ") + h;
  fail(ErrorKind::ParseError, source + ": column '" + name + "' not found (header: " + known + ")");
}

}  // namespace

TimeSeries read_series(std::istream& in, const ColumnMapping& mapping, const SeriesLabels& labels,
                       const std::string& source) {
  if (mapping.y.empty()) fail(ErrorKind::ValidationError, "no y column selected");
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    header = split_csv_line(line, source + ":" + std::to_string(line_no));
    break;
  }
  if (header.empty()) fail(ErrorKind::ParseError, source + ": missing header row");

  const std::size_t cy = find_column(header, mapping.year, source);
  const std::size_t cx = find_column(header, mapping.x, source);
  const std::size_t cv = find_column(header, mapping.y, source);

  TimeSeries ts;
  ts.label_x = labels.x.empty() ? mapping.x : labels.x;
  ts.label_y = labels.y.empty() ? mapping.y : labels.y;
  ts.unit = labels.unit;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string row = source + ":" + std::to_string(line_no);
    const auto fields = split_csv_line(line, row);
    if (fields.size() != header.size()) {
      fail(ErrorKind::ParseError, row + ": expected " + std::to_string(header.size()) +
                                      " fields, found " + std::to_string(fields.size()));
    }
    ts.years.push_back(parse_number<int>(fields[cy], row + " column '" + mapping.year + "'"));
    ts.xs.push_back(parse_number<double>(fields[cx], row + " column '" + mapping.x + "'"));
    ts.ys.push_back(parse_number<double>(fields[cv], row + " column '" + mapping.y + "'"));
  }

  try {
    validate_series(ts);
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, "ValidationError: " + source + ": " + e.what());
  }
  return ts;
}

TimeSeries load_series(const std::filesystem::path& path, const ColumnMapping& mapping,
                       const SeriesLabels& labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  return read_series(in, mapping, labels, path.string());
}

}  // namespace lvdyn
