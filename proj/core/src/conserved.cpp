#include "nlsv/conserved.hpp"

#include <cmath>

#include "nlsv/errors.hpp"
#include "nlsv/spectral.hpp"

namespace nlsv {

ConservedQuantities conserved(const Field& u) {
  require_finite(u, "conserved");

  const double w = u.grid.weight();
  const double p = u.params.power;

  ConservedQuantities q;
  for (const auto& v : u.values) {
    const double m = std::norm(v);
    q.mass += m;
    q.lp1_norm += std::pow(m, 0.5 * (p + 1.0));
  }
  q.mass *= w;
  q.lp1_norm *= w;

  const auto grad = gradient(u.grid, u.values);
  for (int a = 0; a < u.grid.dim(); ++a) {
    double grad_sq = 0.0, mom = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      grad_sq += std::norm(grad[a][i]);
      mom += std::imag(std::conj(u.values[i]) * grad[a][i]);
    }
    q.grad_norm_sq += grad_sq * w;
    q.momentum[a] = mom * w;
  }
  q.energy = 0.5 * q.grad_norm_sq - q.lp1_norm / (p + 1.0);

  if (!std::isfinite(q.energy) || !std::isfinite(q.mass))
    throw NonFinite("conserved: non-finite integrals");
  return q;
}

double eta_value(const ConservedQuantities& u, const ConservedQuantities& q,
                 const ProblemParams& params) {
  const double exponent = (1.0 - params.s_c) / params.s_c;
  const double num = std::sqrt(u.grad_norm_sq) * std::pow(std::sqrt(u.mass), exponent);
  const double den = std::sqrt(q.grad_norm_sq) * std::pow(std::sqrt(q.mass), exponent);
  return num / den;
}

double mass_energy_ratio(const ConservedQuantities& u, const ConservedQuantities& q,
                         const ProblemParams& params) {
  const double exponent = (1.0 - params.s_c) / params.s_c;
  return std::pow(u.mass, exponent) * u.energy / (std::pow(q.mass, exponent) * q.energy);
}

}  // namespace nlsv
