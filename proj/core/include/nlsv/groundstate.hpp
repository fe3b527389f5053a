#ifndef NLSV_GROUNDSTATE_HPP
#define NLSV_GROUNDSTATE_HPP

#include <string>
#include <vector>

#include "nlsv/conserved.hpp"
#include "nlsv/field.hpp"

namespace nlsv {

struct SolverOptions {
  double tolerance = 1e-10;        // residual sup-norm, relative to |Q|_inf
  double step_tolerance = 1e-12;   // successive-iterate sup-norm change
  int max_iterations = 2000;
  double edge_band = 0.05;         // fraction of the box excluded from residual
  double min_cells_per_fwhm = 16.0;
  /// Coefficient mu in -mu Q + Lap Q + Q^p = 0. Defaults to 1 - s_c; the
  /// scale-invariant products downstream do not depend on this choice.
  double stationary_coefficient = -1.0;  // negative = use 1 - s_c
};

struct GroundState {
  Field profile;                 // real, positive, peaked at the box center
  ConservedQuantities norms;
  double cgn = 0.0;              // sharp Gagliardo-Nirenberg constant of this Q
  double residual = 0.0;         // sup |-mu Q + Lap Q + Q^p| / |Q|_inf, edge band excluded
  int iterations = 0;
  double stationary_coefficient = 0.0;
  std::vector<double> residual_history;  // per-iteration, for convergence diagnostics
};

/// Petviashvili fixed-point iteration Q <- S^gamma [mu - Lap]^{ -1}(Q^p)
/// with gamma = p/(p-1). Throws GridTooCoarse / NoConvergence.
GroundState solve_ground_state(const ProblemParams& params, const Grid& grid,
                               const SolverOptions& opts = {});

/// Exact 1D profile Q(x) = (mu(p+1)/2)^{1/(p-1)} sech^{2/(p-1)}(sqrt(mu)(p-1)x/2)
/// sampled on the grid. Throws WrongDimension unless N = 1.
Field soliton_1d_closed_form(const ProblemParams& params, const Grid& grid,
                             double stationary_coefficient = -1.0);

/// FWHM of the 1D closed form, used for grid pre-checks in any dimension.
double soliton_fwhm_estimate(const ProblemParams& params, double stationary_coefficient = -1.0);

/// C_GN = |Q|_{p+1}^{p+1} / (|grad Q|_2^{N(p-1)/2} |Q|_2^{2-(N-2)(p-1)/2}).
double sharp_gn_constant(const GroundState& gs);

/// Slack of the sharp inequality at u:
///   C_GN |grad u|^{N(p-1)/2} |u|^{2-(N-2)(p-1)/2} - |u|_{p+1}^{p+1},
/// which is >= 0 (up to round-off) for localized fields and 0 at u = Q.
double gn_check(const Field& u, double cgn);

/// Binary export/import so expensive solves can be cached across runs.
/// Header: magic, N, p, extent, points, stationary coefficient; then the
/// profile as little-endian float64.
void save_ground_state(const GroundState& gs, const std::string& path);
GroundState load_ground_state(const std::string& path);

/// Cache-aware solve: looks in `cache_dir` (or $NLS_VIRIAL_CACHE when empty)
/// before solving, and stores new solutions there.
GroundState cached_ground_state(const ProblemParams& params, const Grid& grid,
                                const SolverOptions& opts = {},
                                const std::string& cache_dir = {});

}  // namespace nlsv

#endif
