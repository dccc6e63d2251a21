#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cg.hpp"
#include "sbp.hpp"

namespace fadiff {

enum class DtRule { Dx2Over100, Dx, Fixed };

// Full run configuration. Parsed from an INI-style file ([section] headers,
// key = value lines); unknown keys are rejected so typos cannot silently
// fall back to defaults.
struct RunConfig {
  // [domain]
  double length = 1.0;
  int n = 101;
  SbpOrder order = SbpOrder::Order2;
  SecondDerivConstruction construction =
      SecondDerivConstruction::WideFullyCompatible;

  // [physics]
  double kappa_perp = 1e-3;
  double kappa_par = 1.0;
  double alpha = -1.0;

  // [time]
  DtRule dt_rule = DtRule::Dx;
  double dt = 0.0;  // used when dt_rule = fixed
  double final_time = 1.0;

  // [initial]  gaussian | f1 | f2 | zero | uniform | tabulated
  std::string initial = "gaussian";
  double uniform_value = 1.0;
  std::string initial_file;

  // [maps]  identity | f1 | f2 | random | tabulated
  std::string map_forward = "identity";
  std::string map_backward = "identity";
  std::string map_forward_file;
  std::string map_backward_file;
  std::uint64_t seed = 1;

  // [boundary]  constant Neumann data per end
  double g_left = 0.0;
  double g_right = 0.0;

  // [output]
  std::vector<double> snapshot_times;  // empty -> {0, T/4, T/2, 3T/4, T}
  std::string prefix = "run";
  bool companion_no_parallel = false;

  // [cg]
  CgConfig cg;

  // [converge]
  std::vector<int> converge_grids = {65, 129, 257, 513};
  double converge_kappa = 1.0;
  double converge_final_time = 0.25;

  double resolved_dt() const;
  std::vector<double> resolved_snapshot_times() const;

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  // Canonical text form; re-parsing it reproduces this config exactly.
  std::string serialize() const;
  std::uint64_t hash() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a(const std::string& data);

}  // namespace fadiff
