#pragma once

// Deterministic text output: CSV time series and legacy-format VTK
// snapshots (structured points for cell fields, polydata for particles).
// All floating-point values are written with %.17g, which round-trips
// doubles exactly, and the process never changes the C locale, so output
// bytes are a pure function of the data.

#include <cstdio>
#include <string>
#include <vector>

#include "lbdem/core.hpp"
#include "lbdem/dem.hpp"
#include "lbdem/grid.hpp"

namespace lbdem {

namespace detail {

inline std::string format_real(real v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

class TextFile {
 public:
  explicit TextFile(const std::string& path) : path_(path) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) fail(ErrorCategory::io_failure, "cannot open " + path);
  }
  ~TextFile() {
    if (f_) std::fclose(f_);
  }
  TextFile(const TextFile&) = delete;
  TextFile& operator=(const TextFile&) = delete;

  void write(const std::string& s) {
    if (std::fwrite(s.data(), 1, s.size(), f_) != s.size()) {
      fail(ErrorCategory::io_failure, "short write to " + path_);
    }
  }

  void close() {
    if (f_ && std::fclose(f_) != 0) {
      f_ = nullptr;
      fail(ErrorCategory::io_failure, "error closing " + path_);
    }
    f_ = nullptr;
  }

 private:
  std::string path_;
  std::FILE* f_ = nullptr;
};

}  // namespace detail

// CSV with a fixed column set. Comment lines (metadata, e.g. the config
// digest) precede the header and start with '#'.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            const std::vector<std::string>& comments = {})
      : file_(path), n_cols_(columns.size()) {
    if (columns.empty()) {
      fail(ErrorCategory::io_failure, "CSV needs at least one column");
    }
    for (const std::string& c : comments) file_.write("# " + c + "\n");
    std::string header;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) header += ',';
      header += columns[i];
    }
    file_.write(header + "\n");
  }

  void row(const std::vector<real>& values) {
    if (values.size() != n_cols_) {
      fail(ErrorCategory::io_failure, "CSV row width does not match header");
    }
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      line += detail::format_real(values[i]);
    }
    file_.write(line + "\n");
  }

  void close() { file_.close(); }

 private:
  detail::TextFile file_;
  std::size_t n_cols_;
};

// Cell fields on the lattice as a structured-points dataset. Cell centers
// sit at i + 1/2, which becomes the origin of the point lattice.
inline void write_vtk_cells(
    const std::string& path, const std::string& title, const GridSpec& g,
    const std::vector<std::pair<std::string, const ScalarField*>>& scalars,
    const std::vector<std::pair<std::string, const Vec3Field*>>& vectors) {
  detail::TextFile f(path);
  f.write("# vtk DataFile Version 3.0\n");
  f.write(title + "\n");
  f.write("ASCII\n");
  f.write("DATASET STRUCTURED_POINTS\n");
  f.write("DIMENSIONS " + std::to_string(g.nx) + " " + std::to_string(g.ny) +
          " " + std::to_string(g.nz) + "\n");
  f.write("ORIGIN 0.5 0.5 0.5\n");
  f.write("SPACING 1 1 1\n");
  f.write("POINT_DATA " + std::to_string(g.cell_count()) + "\n");
  for (const auto& [name, field] : scalars) {
    f.write("SCALARS " + name + " double 1\n");
    f.write("LOOKUP_TABLE default\n");
    for (std::int64_t c = 0; c < g.cell_count(); ++c) {
      f.write(detail::format_real((*field)[c]) + "\n");
    }
  }
  for (const auto& [name, field] : vectors) {
    f.write("VECTORS " + name + " double\n");
    for (std::int64_t c = 0; c < g.cell_count(); ++c) {
      const Vec3& v = (*field)[c];
      f.write(detail::format_real(v.x) + " " + detail::format_real(v.y) +
              " " + detail::format_real(v.z) + "\n");
    }
  }
  f.close();
}

// Particle positions, diameters and velocities as polydata points.
inline void write_vtk_particles(const std::string& path,
                                const std::string& title,
                                const std::vector<Particle>& ps) {
  detail::TextFile f(path);
  const std::string n = std::to_string(ps.size());
  f.write("# vtk DataFile Version 3.0\n");
  f.write(title + "\n");
  f.write("ASCII\n");
  f.write("DATASET POLYDATA\n");
  f.write("POINTS " + n + " double\n");
  for (const Particle& p : ps) {
    f.write(detail::format_real(p.x.x) + " " + detail::format_real(p.x.y) +
            " " + detail::format_real(p.x.z) + "\n");
  }
  f.write("POINT_DATA " + n + "\n");
  f.write("SCALARS diameter double 1\n");
  f.write("LOOKUP_TABLE default\n");
  for (const Particle& p : ps) f.write(detail::format_real(p.d) + "\n");
  f.write("VECTORS velocity double\n");
  for (const Particle& p : ps) {
    f.write(detail::format_real(p.u.x) + " " + detail::format_real(p.u.y) +
            " " + detail::format_real(p.u.z) + "\n");
  }
  f.write("VECTORS angular_velocity double\n");
  for (const Particle& p : ps) {
    f.write(detail::format_real(p.omega.x) + " " +
            detail::format_real(p.omega.y) + " " +
            detail::format_real(p.omega.z) + "\n");
  }
  f.close();
}

}  // namespace lbdem
