#ifndef NLSV_SCENARIO_HPP
#define NLSV_SCENARIO_HPP

#include <array>
#include <optional>
#include <string>

#include "nlsv/evolve.hpp"
#include "nlsv/groundstate.hpp"
#include "nlsv/virial.hpp"

namespace nlsv {

enum class Experiment { GroundStateOnly, Classify, Evolve, TbBounds, Modulation, FullPipeline };

struct InitialData {
  enum class Kind { ScaledGroundState, Gaussian, File } kind = Kind::ScaledGroundState;
  double scale = 1.0;  // scaled_ground_state(c)
  double amplitude = 1.0, width = 1.0;
  std::array<double, 3> center = {0, 0, 0};
  std::array<double, 3> phase_velocity = {0, 0, 0};
  std::string path;
};

/// One experiment description, loaded from a JSON file. Physical parameters
/// have no implicit defaults; numerical constants default and are recorded
/// in the emitted report.
struct Scenario {
  int dim = 0;
  double power = 0.0;
  double extent = 0.0;
  std::size_t points = 0;
  InitialData initial_data;
  Experiment experiment = Experiment::Classify;
  std::string output_dir;

  SolverOptions solver;
  EvolveOptions evolve_opts;
  LocalizedOptions localized;
  RadialOptions radial;
  std::optional<double> gamma;   // defaults to gamma_max/2 when unset
  std::optional<double> radius;  // defaults to 2 C2 gamma^{-1/2} when unset
  double boundary_tol = 1e-9;
  double modulation_lambda = 1.0;
  double modulation_rho = 0.1;

  std::string source_path;  // where this scenario was loaded from
};

Scenario load_scenario(const std::string& path);

struct RunResult {
  int exit_code = 0;           // 0 ok, 1 validation, 2 numerical
  std::string message;
  std::string report_path;
};

/// Execute the scenario; write meta.json, report.json and (when evolution
/// runs) trajectory.csv into output_dir. report.json is deterministic for a
/// fixed scenario and tool version.
RunResult run_scenario(const Scenario& scenario, const std::string& cache_dir = {});

std::string to_string(Experiment e);

}  // namespace nlsv

#endif
