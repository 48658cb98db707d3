#include "summary.hpp"

#include <cstdio>
#include <sstream>

namespace lvdyn::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(const json& v, const char* spec = "%.6g") {
  if (v.is_null()) return "n/a";
  if (!v.is_number()) return v.dump();
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v.get<double>());
  return buf;
}

}  // namespace

std::string render_summary(const json& r) {
  std::ostringstream out;
  out << "lvdyn " << r["artifact"].value("version", "?") << "\n";
  if (!r.value("complete", true)) {
    out << "INCOMPLETE: stage '" << r["incomplete"].value("stage", "?")
        << "' failed: " << r["incomplete"].value("error", "") << "\n";
  }
  if (r.contains("series")) {
    const auto& s = r["series"];
    out << "series: x = " << s.value("label_x", "") << ", y = " << s.value("label_y", "")
        << " (" << s.value("unit", "") << "), n = " << s["years"].size() << "\n";
  }
  if (r.contains("provenance")) {
    out << "parameters: " << r["provenance"].value("parameter_source", "") << "\n";
  }
  if (r.contains("parameters")) {
    out << "\n  layer        symbol      value\n";
    for (const auto& row : r["parameters"]["table"]) {
      char line[128];
      std::snprintf(line, sizeof line, "  %-12s %-10s %s\n", row["layer"].get<std::string>().c_str(),
                    row["symbol"].get<std::string>().c_str(), fmt(row["value"], "%.6g").c_str());
      out << line;
    }
    for (const auto& w : r["fit_diagnostics"]["warnings"]) out << "  warning: " << w.get<std::string>() << "\n";
  }
  if (r.contains("interaction")) {
    const auto& i = r["interaction"];
    out << "\ninteraction: " << i.value("type", "");
    if (i.value("prey", "none") != "none") out << " (prey: " << i.value("prey_label", "") << ")";
    out << "\n";
  }
  if (r.contains("stability")) {
    out << "\nequilibria:\n";
    for (const auto& s : r["stability"]) {
      out << "  " << s.value("equilibrium", "") << " (" << fmt(s["point"]["x"], "%.2f") << ", "
          << fmt(s["point"]["y"], "%.2f") << "): eigenvalues ";
      bool first = true;
      for (const auto& e : s["eigenvalues"]) {
        out << (first ? "" : ", ") << fmt(e["re"], "%.4g");
        if (!e["im"].is_null() && e["im"].get<double>() != 0.0) out << (e["im"].get<double>() > 0 ? "+" : "") << fmt(e["im"], "%.4g") << "i";
        first = false;
      }
      out << " -> " << s.value("classification", "") << "\n";
    }
  }
  if (r.contains("mape")) {
    const auto& m = r["mape"];
    out << "\nMAPE (%), reported mode " << m.value("reported_mode", "") << ":\n";
    for (const char* mode : {"one_step", "free_running"}) {
      if (!m.contains(mode)) continue;
      out << "  " << mode << ": x " << fmt(m[mode]["x"], "%.3f") << ", y " << fmt(m[mode]["y"], "%.3f") << "\n";
    }
  }
  if (r.contains("sobol")) {
    const auto& s = r["sobol"];
    out << "\nSobol indices (N = " << s["base_n"] << ", seed = " << s["seed"] << ", accepted "
        << s["accepted"] << ", rejected " << s["rejected"] << "):\n";
    for (const auto& o : s["outputs"]) {
      out << "  output " << o.value("output", "") << " (sum S_i = " << fmt(o["sum_S_i"], "%.3f") << ")\n";
      for (const auto& idx : o["indices"]) {
        char line[128];
        std::snprintf(line, sizeof line, "    %-4s S_i %7.3f   S_Ti %7.3f\n",
                      idx["parameter"].get<std::string>().c_str(),
                      idx["S_i"].is_null() ? 0.0 : idx["S_i"].get<double>(),
                      idx["S_Ti"].is_null() ? 0.0 : idx["S_Ti"].get<double>());
        out << line;
      }
    }
  }
  return out.str();
}

}  // namespace lvdyn::cli
