#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsft::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FunctionSpec {
  std::string kind = "gaussian";  // gaussian | bump | sampled
  double center = 0.0;
  double width = 1.0;
  std::string file;
};

struct MultiplierSpec {
  bool present = false;
  std::string kind;  // tent | smooth_bump
  double center = 0.0;
  double radius = 0.0;
};

struct Tolerances {
  double plancherel = 1e-3;
  double roundtrip = 1e-2;
  double intertwining = 1e-3;
  double kernel_vs_oracle = 1e-2;
  double route = 1e-8;
  double unitarity = 1e-6;
};

struct RunConfig {
  std::string potential_kind;
  std::vector<double> potential_params;
  std::string potential_file;
  double x_min = 0.0, x_max = 0.0;
  std::size_t n = 0;
  double xi_max = 10.0;
  std::size_t n_xi = 512;
  bool has_oracle_pad = false;
  std::size_t oracle_pad = 0;
  MultiplierSpec multiplier;
  FunctionSpec function;
  Tolerances tol;
};

/// Flat "key = value" lines; '#' starts a comment. Relative file paths are
/// resolved against base_dir.
RunConfig parse_config(std::istream& in, const std::string& base_dir);
RunConfig load_config(const std::string& path);

}  // namespace dsft::cli
