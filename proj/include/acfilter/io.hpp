#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "acfilter/allen_cahn_2d.hpp"
#include "acfilter/dynamics.hpp"
#include "acfilter/spectral.hpp"

namespace acfilter::io {

/// Shortest text that parses back to the same double (17 significant digits,
/// `nan` / `inf` for non-finite values).
std::string format_double(double v);

/// Column-oriented CSV; all columns must have the same length.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

/// t,energy,residual,max_abs,u_at_zero,pde_residual,parity_defect
void write_series(const std::filesystem::path& path, const RunRecord& rec);
/// t,energy,residual,max_abs,x_defect,y_defect
void write_series_2d(const std::filesystem::path& path, const RunRecord2D& rec);

/// kappa,max_abs_final,verdict,energy_final,stop_reason,final_time,error
/// (text fields quoted when they contain commas or quotes).
void write_sweep(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

/// x,u on the grid nodes.
void write_profile(const std::filesystem::path& path, const SpectralField1D& u);
/// Reads an x,u file written by write_profile (header required; x must be the
/// grid nodes of an even-size periodic grid).
SpectralField1D read_profile(const std::filesystem::path& path);

/// x,y,u rows, x outermost.
void write_grid_csv(const std::filesystem::path& path, const SpectralField2D& u);
/// 8-bit binary PGM, gray level linear in u over [lo, hi].
void write_pgm(const std::filesystem::path& path, const SpectralField2D& u, double lo = -1.0,
               double hi = 1.0);

/// Plain `key: value` sidecar, one entry per line, in insertion order.
class Meta {
 public:
  Meta& add(std::string key, std::string value);
  Meta& add(std::string key, double value);
  Meta& add(std::string key, long value);
  Meta& add(std::string key, int value) { return add(std::move(key), static_cast<long>(value)); }
  Meta& add(std::string key, bool value);
  Meta& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace acfilter::io
