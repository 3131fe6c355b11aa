#pragma once

// Run configuration shared by the command-line tool: presets, INI files and
// validation. Everything that reaches a module is checked here first.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rnm/asymptotics.hpp"
#include "rnm/exact.hpp"
#include "rnm/potential.hpp"

namespace rnm {

enum class Sweep { none, a, rho };

struct GridSpec {
  double lo = 0.0, hi = 0.0;
  int count = 1;
  std::vector<double> points() const;
};

struct RunConfig {
  std::string potential = "ginibre";  // preset name or "monomial"
  std::vector<MonomialTerm> terms{{1.0, 2.0}};

  double alpha = 0.0;
  cplx u{0.0, 0.0};
  double a = 0.0;
  /// Exactly one of rho / rho_frac is set; rho_frac is relative to r1.
  std::optional<double> rho;
  std::optional<double> rho_frac = 0.5;
  double delta = 0.5;

  std::vector<int> n_list{25, 50, 100, 200};
  Sweep sweep = Sweep::none;
  GridSpec grid;

  ExactConfig exact;
  RegularizationConfig reg;
  int jmax = 4;

  int reps = 10000;
  std::uint64_t seed = 1;
  int mc_grid = 2048;

  std::string format = "csv";
  std::string out_path;  // empty: stdout

  PotentialModel model() const;
  /// Absolute rho for this potential; rho_frac is scaled by r1.
  double resolve_rho(const PotentialModel& m) const;
  SingularWeightParams params(const PotentialModel& m) const;

  /// Throws ConfigError with the offending key.
  void validate() const;
};

/// "ginibre", "figure1a" or "figure1b".
RunConfig preset_config(const std::string& name);

/// Apply the keys of an INI file on top of `base`.
RunConfig load_config(const std::string& path, RunConfig base = {});
RunConfig parse_config_string(const std::string& text, RunConfig base = {});

std::vector<int> parse_n_list(const std::string& text);
GridSpec parse_grid(const std::string& text);
Sweep parse_sweep(const std::string& text);
std::vector<MonomialTerm> parse_terms(const std::string& text);

}  // namespace rnm
