#include "acfilter/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace acfilter::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("write_csv: header/column count");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
  }
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << format_double(columns[i][r]);
    }
    out << '\n';
  }
}

void write_series(const std::filesystem::path& path, const RunRecord& rec) {
  write_csv(path,
            {"t", "energy", "residual", "max_abs", "u_at_zero", "pde_residual", "parity_defect"},
            {rec.times, rec.energies, rec.residuals, rec.max_abs, rec.u_at_zero,
             rec.pde_residuals, rec.parity_defects});
}

void write_series_2d(const std::filesystem::path& path, const RunRecord2D& rec) {
  write_csv(path, {"t", "energy", "residual", "max_abs", "x_defect", "y_defect"},
            {rec.times, rec.energies, rec.residuals, rec.max_abs, rec.x_defects, rec.y_defects});
}

void write_sweep(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  auto out = open_out(path);
  out << "kappa,max_abs_final,verdict,energy_final,stop_reason,final_time,error\n";
  for (const auto& r : rows) {
    out << format_double(r.kappa) << ',' << format_double(r.max_abs_final) << ','
        << quote(r.verdict) << ',' << format_double(r.energy_final) << ','
        << to_string(r.stop_reason) << ',' << format_double(r.final_time) << ',' << quote(r.error)
        << '\n';
  }
}

void write_profile(const std::filesystem::path& path, const SpectralField1D& u) {
  const auto x = u.grid().nodes();
  write_csv(path, {"x", "u"}, {x, u.values()});
}

SpectralField1D read_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  std::vector<double> xs;
  std::vector<double> us;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected x,u");
    }
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      us.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  const PeriodicGrid1D grid(static_cast<int>(us.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (std::abs(xs[j] - grid.node(static_cast<int>(j))) > 1e-9) {
      throw std::runtime_error(path.string() + ": x column is not the periodic grid on [-pi, pi)");
    }
  }
  return SpectralField1D::from_values(grid, std::move(us));
}

void write_grid_csv(const std::filesystem::path& path, const SpectralField2D& u) {
  const auto& g = u.grid();
  auto out = open_out(path);
  out << "x,y,u\n";
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      out << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
          << format_double(u.value(i, j)) << '\n';
    }
  }
}

void write_pgm(const std::filesystem::path& path, const SpectralField2D& u, double lo, double hi) {
  const auto& g = u.grid();
  auto out = open_out(path);
  // rows run top to bottom in y, columns left to right in x
  out << "P5\n" << g.nx() << ' ' << g.ny() << "\n255\n";
  std::string row(g.nx(), '\0');
  for (int j = g.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double s = std::clamp((u.value(i, j) - lo) / (hi - lo), 0.0, 1.0);
      row[i] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * s)));
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

Meta& Meta::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}
Meta& Meta::add(std::string key, double value) { return add(std::move(key), format_double(value)); }
Meta& Meta::add(std::string key, long value) { return add(std::move(key), std::to_string(value)); }
Meta& Meta::add(std::string key, bool value) {
  return add(std::move(key), std::string(value ? "true" : "false"));
}

void Meta::write(const std::filesystem::path& path) const {
  auto out = open_out(path);
  for (const auto& [k, v] : entries_) out << k << ": " << v << '\n';
}

}  // namespace acfilter::io
