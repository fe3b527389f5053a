#include "nlsv/transform.hpp"

#include <cmath>

#include "nlsv/conserved.hpp"
#include "nlsv/errors.hpp"
#include "nlsv/groundstate.hpp"
#include "nlsv/spectral.hpp"

namespace nlsv {

Field galilean_boost(const Field& u, const std::array<double, 3>& xi0) {
  require_finite(u, "galilean_boost");
  bool zero = true;
  for (int a = 0; a < u.grid.dim(); ++a) zero = zero && xi0[a] == 0.0;
  if (zero) return u;

  Field boosted = u;
  const std::size_t n = u.grid.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    const auto x = u.grid.coord(flat);
    double phase = 0.0;
    for (int a = 0; a < u.grid.dim(); ++a) phase += x[a] * xi0[a];
    boosted.values[flat] *= std::polar(1.0, phase);
  }
  return boosted;
}

std::pair<Field, std::array<double, 3>> zero_momentum_frame(const Field& u) {
  const ConservedQuantities q = conserved(u);
  if (!(q.mass > 0.0)) throw ZeroMass("zero_momentum_frame: M(u) = 0");
  std::array<double, 3> xi0 = {0, 0, 0};
  for (int a = 0; a < u.grid.dim(); ++a) xi0[a] = -q.momentum[a] / q.mass;
  return {galilean_boost(u, xi0), xi0};
}

double mass_rescale_beta(double mass_u, double mass_q, const ProblemParams& params) {
  return std::pow(mass_u / mass_q, (params.power - 1.0) / (params.np1() - 4.0));
}

Field mass_rescale(const Field& u, const GroundState& gs, const RescaleOptions& opts) {
  const ConservedQuantities q = conserved(u);
  if (!(q.mass > 0.0)) throw ZeroMass("mass_rescale: M(u) = 0");

  const double beta = mass_rescale_beta(q.mass, gs.norms.mass, u.params);
  if (beta == 1.0) return u;

  if (beta > 1.0) {
    const double cells = fwhm_cells(u.grid, u.values) / beta;
    if (cells < opts.min_cells_per_width)
      throw AliasRisk("mass_rescale: beta = " + std::to_string(beta) +
                      " would leave " + std::to_string(cells) +
                      " cells per half-max width");
  }

  Field v = u;
  v.values = resample_scale(u.grid, u.values, beta);
  const double amp = std::pow(beta, 2.0 / (u.params.power - 1.0));
  for (auto& val : v.values) val *= amp;
  return v;
}

}  // namespace nlsv
