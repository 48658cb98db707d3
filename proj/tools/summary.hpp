#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace lvdyn::cli {

/// Plain-text rendering of a report.json document.
std::string render_summary(const nlohmann::ordered_json& report);

}  // namespace lvdyn::cli
