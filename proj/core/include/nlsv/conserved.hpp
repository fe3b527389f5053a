#ifndef NLSV_CONSERVED_HPP
#define NLSV_CONSERVED_HPP

#include <array>

#include "nlsv/field.hpp"

namespace nlsv {

/// The H^1 conserved quantities of the flow plus the two norms every
/// dichotomy expression is built from.
struct ConservedQuantities {
  double mass = 0.0;                            // int |u|^2
  double energy = 0.0;                          // grad_norm_sq/2 - lp1_norm/(p+1)
  std::array<double, 3> momentum = {0, 0, 0};   // Im int conj(u) grad u
  double grad_norm_sq = 0.0;                    // int |grad u|^2
  double lp1_norm = 0.0;                        // int |u|^(p+1)
};

/// Spectral differentiation + grid quadrature. Throws NonFinite.
ConservedQuantities conserved(const Field& u);

/// eta = |grad u| |u|^((1-s_c)/s_c) normalized by the same product for Q.
double eta_value(const ConservedQuantities& u, const ConservedQuantities& q,
                 const ProblemParams& params);

/// M(u)^((1-s_c)/s_c) E(u) / (M(Q)^((1-s_c)/s_c) E(Q)), the scale-invariant
/// mass-energy quantity the dichotomy thresholds at 1.
double mass_energy_ratio(const ConservedQuantities& u, const ConservedQuantities& q,
                         const ProblemParams& params);

}  // namespace nlsv

#endif
