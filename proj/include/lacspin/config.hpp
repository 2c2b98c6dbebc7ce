#ifndef LACSPIN_CONFIG_HPP
#define LACSPIN_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "lacspin/model.hpp"

namespace lacspin {

enum class RunMode { spectrum, freqsweep, trajectory };
enum class UnitSystem { cyclic, angular };
enum class PhasePolicy { raw_xy, best_phase, fixed };

// Parsed and validated run configuration. Model parameters are stored as
// written in the file; `units` controls how they map onto the angular
// fields of ModelParams (cyclic values are multiplied by 2*pi; fm is a
// cyclic frequency in both systems).
struct RunConfig {
  RunMode mode = RunMode::spectrum;
  UnitSystem units = UnitSystem::cyclic;

  double v_perturb = 0.0;
  double hfc = 0.0;
  double omega1 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double pump = 0.0;

  std::optional<double> fm;      // spectrum & trajectory modes
  std::optional<double> omega0;  // trajectory mode
  std::vector<double> grid;      // omega0 values (spectrum) or fm values (freqsweep)

  std::vector<Observable> observables;
  PhasePolicy phase_policy = PhasePolicy::raw_xy;
  std::optional<double> phase_deg;  // with phase_policy = fixed
  std::optional<long> n_steps;      // empty = auto-convergence
  std::string output_path;
  bool emit_plot_data = false;

  // Angular-unit ModelParams at the given sweep coordinate. n_steps <= 0
  // marks auto mode for the caller to resolve.
  ModelParams base_params(double omega0_value, double fm_value) const;
  double to_angular(double value) const;
};

// Parses flat `key = value` text ('#' comments, case-insensitive keys).
// Unknown, duplicate, missing and malformed entries raise ParseError with
// one issue line each; missing keys are all reported at once.
RunConfig parse_config(const std::string& text);

// Canonical serialization; parsing it back reproduces every value.
std::string format_config(const RunConfig& config);

std::string_view run_mode_name(RunMode m);
std::string_view unit_system_name(UnitSystem u);
std::string_view phase_policy_name(PhasePolicy p);

}  // namespace lacspin

#endif
