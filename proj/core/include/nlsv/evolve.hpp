#ifndef NLSV_EVOLVE_HPP
#define NLSV_EVOLVE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "nlsv/conserved.hpp"
#include "nlsv/field.hpp"
#include "nlsv/groundstate.hpp"

namespace nlsv {

struct TrajectoryRecord;

struct EvolveOptions {
  double dt0 = 1e-3;          // initial / maximum step
  double dt_min = 1e-9;       // floor below which blow-up is declared
  double cfl_nl = 0.2;        // cap on dt * max|u|^(p-1), nonlinear phase per step
  int record_every = 20;      // diagnostic cadence in steps
  double t_max = 1.0;
  double blowup_factor = 10.0;  // gradient growth ratio declaring divergence
  bool track_variance = true;
  std::optional<double> cutoff_radius;  // track z_R when set
  double boundary_mass_tol = 1e-6;      // x-space validity flag threshold
  double spectral_tail_tol = 1e-10;     // k-space validity flag: pre-clip mass
                                        // fraction beyond the 2/3 ball
  /// Called with the state at every record, after the record is filled;
  /// lets callers track extra diagnostics (tail quantities, hypothesis
  /// checks) without re-running the trajectory.
  std::function<void(const Field&, const TrajectoryRecord&)> record_hook;
};

struct TrajectoryRecord {
  double t = 0.0;
  ConservedQuantities conserved;
  double eta = 0.0;
  double variance = 0.0;  // NaN when untracked or boundary flag dirty
  double z_R = 0.0;       // NaN when untracked
  double dt = 0.0;
  bool boundary_ok = true;  // mass beyond |x| > L/2 within tolerance
  bool resolved_ok = true;  // spectral tail (about to be dealiased) within tolerance
};

enum class Termination { HorizonReached, BlowupDetected, NonFiniteState };

struct EvolveOutcome {
  Field final;
  std::vector<TrajectoryRecord> records;
  Termination termination = Termination::HorizonReached;
  double termination_time = 0.0;
  std::size_t steps = 0;
};

/// One Strang splitting step: half nonlinear phase, full linear spectral
/// phase, half nonlinear phase, with 2/3-rule dealiasing after each
/// nonlinear substep. Throws NonFinite.
Field step(const Field& u, double dt);

/// Adaptive split-step run with conservation and blow-up monitoring.
EvolveOutcome evolve(const Field& u0, const EvolveOptions& opts, const GroundState& gs);

}  // namespace nlsv

#endif
