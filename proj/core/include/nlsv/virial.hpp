#ifndef NLSV_VIRIAL_HPP
#define NLSV_VIRIAL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nlsv/field.hpp"
#include "nlsv/groundstate.hpp"

namespace nlsv {

/// Radial weight phi with phi(y) = |y|^2 for |y| <= 1, 0 for |y| >= 2 and a
/// C^4 polynomial bridge between, sampled with its exact derivatives so the
/// localized virial identity needs no numerical differentiation.
/// Scalings match z_R = int R^2 phi(x/R) |u|^2:
///   phi      = R^2 phi(x/R)         (equals |x|^2 inside radius R)
///   grad_phi = R (d_j phi)(x/R)
///   hess_phi = (d_j d_k phi)(x/R)   (upper triangle, row-major)
///   lap_phi  = (Lap phi)(x/R)
///   bilap_phi= R^-2 (Lap^2 phi)(x/R)
struct CutoffProfile {
  Grid grid;
  double radius = 0.0;
  std::vector<double> phi;
  std::array<std::vector<double>, 3> grad_phi;
  std::vector<std::vector<double>> hess_phi;  // dim*(dim+1)/2 entries
  std::vector<double> lap_phi;
  std::vector<double> bilap_phi;
};

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

enum class VirialVariant { Variance, Localized, Radial };

struct VirialReport {
  double r0 = 0.0;        // scaled (local) variance at t = 0
  double r0_prime = 0.0;  // its derivative
  double t_b = 0.0;       // r0_prime + sqrt(r0_prime^2 + 2 r0)
  double gamma = 0.0;
  double gamma_max = 0.0;
  double radius = 0.0;       // localization radius in the mass-normalized frame
  double lambda_plus = 0.0;
  double mass_beta = 1.0;    // algebraic normalization factor applied (1 when M(u) = M(Q))
  VirialVariant variant = VirialVariant::Variance;
  std::optional<InequalityCheck> radial_gn;  // radial tail inequality, when evaluated
};

std::string to_string(VirialVariant variant);

/// int |x|^2 |u|^2, x from the box center. Throws BoundaryMass if more than
/// 1e-6 of the mass sits at |x| > L/2.
double variance(const Field& u);

/// Im int (x . grad u) conj(u); the variance derivative is 4x this.
double variance_rate(const Field& u);

/// Finite-variance blow-up time bound. The input is normalized to M(Q)
/// algebraically (exact scaling identities, no resampling); r0, r0_prime and
/// t_b are reported in the frame of the supplied field.
VirialReport tb_variance(const Field& u, const GroundState& gs);

CutoffProfile make_cutoff(const Grid& grid, double radius);

struct LocalVirial {
  double z_R = 0.0;         // int R^2 phi(x/R) |u|^2
  double z_R_second = 0.0;  // the localized identity's value of z_R''
  double A_R = 0.0;         // z_R_second minus the global virial right side
};

LocalVirial local_virial(const Field& u, const CutoffProfile& cut);

/// Localized z_R'(t) = 2 Im int (grad Phi . grad u) conj(u).
double local_virial_rate(const Field& u, const CutoffProfile& cut);

/// Reported control of the localization error:
///   |A_R| <= C1 (R^-2 |u|^2_{L2(|x|>=R)} + |u|^{p+1}_{Lp+1(|x|>=R)}).
/// A checkable inequality, not an asserted truth: any C^4 weight that is
/// |x|^2 inside R and vanishes beyond 2R overshoots |D^2 phi| well past 2,
/// so fixed C1 fails on data with visible tails.
InequalityCheck exterior_error_check(const Field& u, const CutoffProfile& cut, double C1 = 10.0);

/// gamma_max = min(2 w1 (2N(p-1)-8), 4N(p-1) w2 lambda^((N(p-1)-4)/2) - 16 w1),
/// positive for every lambda_plus > 1.
double gamma_window(double lambda_plus, const ProblemParams& params);

/// Masked tail norms at |x| >= radius; the gradient is differentiated
/// globally and then masked.
struct ExteriorNorms {
  double mass = 0.0;     // int_{|x|>=R} |u|^2
  double grad_sq = 0.0;  // int_{|x|>=R} |grad u|^2
  double lp1 = 0.0;      // int_{|x|>=R} |u|^(p+1)
};

ExteriorNorms exterior_norms(const Field& u, double radius);

/// Exterior dichotomy quantity eta_{>=R}; exterior gradient norms are
/// spectral-then-masked.
double eta_exterior(const Field& u, const GroundState& gs, double radius);

struct LocalizedOptions {
  double C = 1.0;    // scaled-variance constant of the localized bound
  double C1 = 10.0;  // exterior-error control constant (reported checks)
  double C2 = 1.0;   // radius floor R >= C2 gamma^{-1/2}
};

VirialReport tb_localized(const Field& u, const GroundState& gs, double gamma,
                          double radius, const LocalizedOptions& opts = {});

/// sup over R' in {R 2^(j/4)} of (R')^(-2 s_c) int_{R'<=|x|<=2R'} |u|^2.
double rho_dyadic(const Field& u, double radius);

struct RadialOptions {
  double C_gamma = 1.0;
  double C_Q = 1.0;
  double angular_tol = 1e-8;
};

VirialReport tb_radial(const Field& u, const GroundState& gs, double gamma,
                       double radius, const RadialOptions& opts = {});

/// Max deviation of |u| under the grid symmetries (axis permutations,
/// reflections) plus equal-|x|^2 bins, relative to sup|u|.
double angular_variation(const Field& u);

}  // namespace nlsv

#endif
