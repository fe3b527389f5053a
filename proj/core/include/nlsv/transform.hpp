#ifndef NLSV_TRANSFORM_HPP
#define NLSV_TRANSFORM_HPP

#include <array>
#include <utility>

#include "nlsv/field.hpp"

namespace nlsv {

struct GroundState;

/// u(x) -> e^{i x.xi0} u(x) (t = 0 Galilean boost). Mass is unchanged,
/// P -> P + xi0 M, E -> E + xi0.P + |xi0|^2 M / 2.
Field galilean_boost(const Field& u, const std::array<double, 3>& xi0);

/// Boost by xi0 = -P(u)/M(u); the returned field has |P| < 1e-10 M and the
/// lowest energy over all boosts. Throws ZeroMass.
std::pair<Field, std::array<double, 3>> zero_momentum_frame(const Field& u);

struct RescaleOptions {
  double min_cells_per_width = 8.0;  // alias guard for beta > 1
};

/// v(x) = beta^{2/(p-1)} u(beta x) with beta = (M(u)/M(Q))^{(p-1)/(N(p-1)-4)},
/// spectrally resampled so that M(v) = M(Q). Throws ZeroMass / AliasRisk.
Field mass_rescale(const Field& u, const GroundState& gs, const RescaleOptions& opts = {});

/// The beta exponent above, exposed for the virial bounds which normalize
/// algebraically instead of resampling.
double mass_rescale_beta(double mass_u, double mass_q, const ProblemParams& params);

}  // namespace nlsv

#endif
