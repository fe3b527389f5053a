#ifndef NLSV_MODULATION_HPP
#define NLSV_MODULATION_HPP

#include <array>
#include <utility>

#include "nlsv/field.hpp"
#include "nlsv/groundstate.hpp"

namespace nlsv {

struct ModulationFit {
  double theta = 0.0;                    // phase in [0, 2 pi)
  std::array<double, 3> x0 = {0, 0, 0};  // translation
  double lambda = 1.0;                   // scale used for the fit
  double dist_l2 = 0.0;                  // |u - e^{i theta} Q_lambda(. - x0)|_2
  double dist_h1dot = 0.0;               // same in the homogeneous H^1 seminorm
};

/// The two proximity hypotheses of the variational characterization at
/// scale lambda and tolerance rho:
///   |E(u)/E(Q) - (w1 l^2 - w2 l^(N(p-1)/2))| <= rho l^(N(p-1)/2)
///   ||grad u|/|grad Q| - l| <= rho (l if l >= 1 else l^2)
/// Requires M(u) = M(Q); throws MassMismatch.
std::pair<bool, bool> hypotheses_check(const Field& u, const GroundState& gs,
                                       double lambda, double rho,
                                       double mass_tol = 1e-6);

/// Best phase/translation match of u against the scaled soliton orbit:
/// x0 from the spectral cross-correlation peak with sub-grid quadratic
/// refinement, theta = arg <u, Q_lambda(. - x0)>.
ModulationFit fit(const Field& u, const GroundState& gs, double lambda);

}  // namespace nlsv

#endif
