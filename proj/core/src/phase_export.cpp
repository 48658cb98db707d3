#include "lvdyn/phase_export.hpp"

#include <fstream>
#include <system_error>

#include "lvdyn/error.hpp"
#include "number_format.hpp"

namespace lvdyn {

namespace {

using detail::format_g;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

const char* region_name(std::int8_t sx, std::int8_t sy) {
  if (sx < 0 && sy > 0) return "I";
  if (sx < 0 && sy < 0) return "II";
  if (sx > 0 && sy < 0) return "III";
  if (sx > 0 && sy > 0) return "IV";
  return "boundary";
}

constexpr const char* kReadme =
    "Phase-plane data (CSV, comma separated, header row, period decimal point)\n"
    "\n"
    "nullclines.csv   nullcline,A,B,C,x,y\n"
    "                 points on the non-trivial nullclines A + B x + C y = 0;\n"
    "                 'x' is dx/dt = 0 (A=a1, B=b11, C=b12), 'y' is dy/dt = 0\n"
    "                 (A=a2, B=b21, C=b22)\n"
    "signgrid.csv     row,col,x,y,sign_dxdt,sign_dydt,region\n"
    "                 signs on a regular grid; region I (-,+), II (-,-), III (+,-),\n"
    "                 IV (+,+), 'boundary' when a sign is zero\n"
    "vectorfield.csv  x,y,dxdt,dydt  on the same grid, row-major\n"
    "trajectory_*.csv t,x,y          RK4 solution of the continuous system\n";

}  // namespace

std::vector<std::filesystem::path> export_phase_data(const PhaseGeometry& pg,
                                                     const std::vector<NamedTrajectory>& trajectories,
                                                     const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    fail(ErrorKind::IoError, "cannot create output directory " + dir.string() +
                                 (ec ? " (" + ec.message() + ")" : ""));
  }
  std::vector<std::filesystem::path> written;

  {
    const auto path = dir / "nullclines.csv";
    auto out = open_for_write(path);
    out << "nullcline,A,B,C,x,y\n";
    const std::pair<const char*, const Line*> lines[] = {{"x", &pg.nullcline_x},
                                                         {"y", &pg.nullcline_y}};
    for (const auto& [name, line] : lines) {
      for (const State& p : sample_line(*line, pg.bbox, 101)) {
        out << name << ',' << format_g(line->a) << ',' << format_g(line->b) << ','
            << format_g(line->c) << ',' << format_g(p.x) << ',' << format_g(p.y) << '\n';
      }
    }
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "signgrid.csv";
    auto out = open_for_write(path);
    out << "row,col,x,y,sign_dxdt,sign_dydt,region\n";
    for (std::size_t r = 0; r < pg.grid_n; ++r) {
      for (std::size_t c = 0; c < pg.grid_n; ++c) {
        const GridSample& g = pg.at(r, c);
        out << r << ',' << c << ',' << format_g(g.x) << ',' << format_g(g.y) << ','
            << int(g.sign_x) << ',' << int(g.sign_y) << ',' << region_name(g.sign_x, g.sign_y)
            << '\n';
      }
    }
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "vectorfield.csv";
    auto out = open_for_write(path);
    out << "x,y,dxdt,dydt\n";
    for (const GridSample& g : pg.grid) {
      out << format_g(g.x) << ',' << format_g(g.y) << ',' << format_g(g.dxdt) << ','
          << format_g(g.dydt) << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }
  for (const NamedTrajectory& nt : trajectories) {
    const auto path = dir / ("trajectory_" + nt.name + ".csv");
    auto out = open_for_write(path);
    out << "t,x,y\n";
    const auto& tr = nt.trajectory;
    const std::size_t stride = std::max<std::size_t>(1, nt.stride);
    for (std::size_t i = 0; i < tr.ts.size(); ++i) {
      if (i % stride != 0 && i + 1 != tr.ts.size()) continue;
      out << format_g(tr.ts[i]) << ',' << format_g(tr.states.xs[i]) << ','
          << format_g(tr.states.ys[i]) << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }
  {
    const auto path = dir / "README.txt";
    auto out = open_for_write(path);
    out << kReadme;
    finish(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace lvdyn
