#pragma once

// JSON problem description shared by the CLI and the harness.
//
//   {
//     "grid":    {"L": 16, "M": 16384},
//     "defects": [{"y": 0, "mu": 0.5,
//                  "potential": {"kind": "gaussian", "params": {"alpha": 1, "width": 1}}}],
//     "epsilon": 0.1,                       // or "epsilons": [0.2, 0.1, 0.05, 0.025]
//     "T": 0.5, "dt": 2.5e-4,
//     "psi0":    {"kind": "gaussian", "params": {"amplitude": 1, "width": 1}},
//     "solver":  {"damping": 0.5, "tolerance": 1e-12, "max_iterations": 200, "images": 256,
//                 "blowup_factor": 1000, "allow_inadmissible": false},
//     "output":  {"count": 64, "exclude_largest_epsilon": true, "threads": 0}
//   }
//
// Potential kinds: gaussian {amplitude | alpha, width}, box {height, half_width},
// double_well {amplitude, width, separation}, sampled {origin, spacing, values},
// zero. Initial data kinds: gaussian {amplitude, width, center, wavenumber},
// plane_wave {amplitude, mode}, sech {amplitude, width, center}, zero.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "concnls/core.hpp"

namespace concnls {

struct InitialData {
  std::string kind = "gaussian";
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
  double wavenumber = 0.0;
  long mode = 0;

  std::vector<cplx> sample(const Grid1D& grid) const;
};

struct Config {
  Grid1D grid{16.0, 4096};
  std::vector<DefectSpec> defects;
  std::vector<double> epsilons;
  double horizon = 0.5;
  double dt = 2.5e-4;
  InitialData psi0;
  PointSolverOptions point;
  double blowup_factor = 1e3;
  bool allow_inadmissible = false;
  std::size_t output_count = 64;
  bool exclude_largest_epsilon = true;
  std::size_t threads = 0;

  ScaledProblem scaled_problem(double epsilon) const;
  /// Limit problem with alpha_k = integral of V_k.
  PointProblem point_problem() const;
  /// The fully resolved configuration as JSON text.
  std::string to_json() const;
};

Config parse_config(std::string_view json_text);
Config load_config(const std::filesystem::path& path);

}  // namespace concnls
