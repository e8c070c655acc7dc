#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "acfilter/io.hpp"
#include "doctest.h"

using namespace acfilter;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "acfilter_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, kPi, 1e-300, 6.02214076e23, 0.500905328110801}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("profile write and read") {
  const PeriodicGrid1D g(32);
  const auto u = SpectralField1D::sample(g, [](double x) { return std::sin(x) + 0.1 * std::cos(2 * x); });
  const auto path = scratch("profile.csv");
  io::write_profile(path, u);
  const auto back = io::read_profile(path);
  CHECK(back.grid() == g);
  CHECK(max_abs_difference(u, back) == 0.0);

  std::ofstream(scratch("bad.csv")) << "x,u\n0.0,1.0\n0.5,2.0\n";
  CHECK_THROWS(io::read_profile(scratch("bad.csv")));
  std::ofstream(scratch("empty.csv")) << "";
  CHECK_THROWS(io::read_profile(scratch("empty.csv")));
}

TEST_CASE("csv columns must match") {
  const std::vector<double> a{1, 2};
  const std::vector<double> b{1};
  CHECK_THROWS_AS(io::write_csv(scratch("m.csv"), {"a", "b"}, {a, b}), std::invalid_argument);
  io::write_csv(scratch("ok.csv"), {"a", "b"}, {a, a});
  CHECK(slurp(scratch("ok.csv")) == "a,b\n1,1\n2,2\n");
}

TEST_CASE("meta sidecar") {
  io::Meta m;
  m.add("kappa", 0.5).add("modes", 256).add("filter", "odd").add("fast", true);
  m.write(scratch("meta.txt"));
  CHECK(slurp(scratch("meta.txt")) == "kappa: 0.5\nmodes: 256\nfilter: odd\nfast: true\n");
}

TEST_CASE("sweep rows are quoted") {
  SweepRow r;
  r.kappa = 0.5;
  r.max_abs_final = 0.75;
  r.verdict = "ground(j=1,sign=+,c=0)";
  r.energy_final = 1.0;
  r.stop_reason = StopReason::tol_reached;
  r.final_time = 12.5;
  r.error = "said \"no\"";
  io::write_sweep(scratch("sweep.csv"), {r});
  const auto text = slurp(scratch("sweep.csv"));
  CHECK(text.starts_with("kappa,max_abs_final,verdict,energy_final,stop_reason,final_time,error\n"));
  CHECK(text.find("\"ground(j=1,sign=+,c=0)\"") != std::string::npos);
  CHECK(text.find("\"said \"\"no\"\"\"") != std::string::npos);
}

TEST_CASE("series header") {
  RunRecord rec;
  rec.times = {0.0};
  rec.energies = {1.0};
  rec.residuals = {std::numeric_limits<double>::quiet_NaN()};
  rec.max_abs = {1.0};
  rec.u_at_zero = {0.0};
  rec.pde_residuals = {0.1};
  rec.parity_defects = {0.0};
  io::write_series(scratch("series.csv"), rec);
  CHECK(slurp(scratch("series.csv")) ==
        "t,energy,residual,max_abs,u_at_zero,pde_residual,parity_defect\n0,1,nan,1,0,0.10000000000000001,0\n");
}
