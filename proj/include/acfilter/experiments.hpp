#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace acfilter {

struct ExperimentOptions {
  std::filesystem::path out = "out";
  bool fast = false;
  std::uint64_t seed = 12345;
};

struct ExperimentCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // measured vs expected
};

struct ExperimentResult {
  std::string name;
  std::filesystem::path dir;
  std::vector<ExperimentCheck> checks;

  bool ok() const;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
};

const std::vector<ExperimentInfo>& experiment_registry();

/// Runs one named experiment into `<out>/<name>/`: CSV data, SVG plots, a
/// `meta.txt` sidecar and `checks.txt`. Throws std::invalid_argument for an
/// unknown name; failed assertions are reported in the result.
ExperimentResult run_experiment(std::string_view name, const ExperimentOptions& opts);

}  // namespace acfilter
