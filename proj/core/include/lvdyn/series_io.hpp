#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "lvdyn/series.hpp"

namespace lvdyn {

struct ColumnMapping {
  std::string year = "year";
  std::string x = "ai_capital";
  std::string y;
};

struct SeriesLabels {
  std::string x;  // empty: use the column name
  std::string y;
  std::string unit = "billion yuan";
};

/// Headered CSV, columns selected by name. ParseError names the row and
/// column; the result is validated with validate_series.
TimeSeries read_series(std::istream& in, const ColumnMapping& mapping,
                       const SeriesLabels& labels = {}, const std::string& source = "<stream>");
TimeSeries load_series(const std::filesystem::path& path, const ColumnMapping& mapping,
                       const SeriesLabels& labels = {});

}  // namespace lvdyn
