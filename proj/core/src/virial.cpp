#include "nlsv/virial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "nlsv/classify.hpp"
#include "nlsv/errors.hpp"
#include "nlsv/spectral.hpp"
#include "nlsv/transform.hpp"

namespace nlsv {

std::string to_string(VirialVariant variant) {
  switch (variant) {
    case VirialVariant::Variance: return "variance";
    case VirialVariant::Localized: return "localized";
    case VirialVariant::Radial: return "radial";
  }
  return "?";
}

namespace {

void require_interior_mass(const Field& u, const char* where) {
  const double fraction = boundary_mass_fraction(u.grid, u.values);
  if (!(fraction < 1e-6)) {
    std::ostringstream msg;
    msg << where << ": " << fraction
        << " of the mass sits at |x| > L/2; x-weighted quadrature untrusted";
    throw BoundaryMass(msg.str());
  }
}

// ---- C^4 radial weight -----------------------------------------------------
//
// g(s) = s^2 on [0,1], s^2 (1 - S(s-1)) on (1,2), 0 beyond, where S is the
// ninth-degree smoothstep with S' = 630 t^4 (1-t)^4: value and four
// derivatives match at both junctions.

struct Poly {
  // coefficients, c[i] on t^i
  std::vector<double> c;
  double eval(double t) const {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
  }
  Poly deriv() const {
    if (c.size() <= 1) return Poly{{0.0}};
    Poly d;
    d.c.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
    return d;
  }
};

struct BridgeTables {
  Poly w[5];  // W = 1 - S and four derivatives, in t = s - 1
  BridgeTables() {
    Poly s_only{{0, 0, 0, 0, 0, 126, -420, 540, -315, 70}};
    w[0].c = s_only.c;
    for (auto& coeff : w[0].c) coeff = -coeff;
    w[0].c[0] += 1.0;
    for (int d = 1; d <= 4; ++d) w[d] = w[d - 1].deriv();
  }
};

// g(s) and derivatives g', g'', g''', g'''' at one radius.
std::array<double, 5> weight_profile(double s) {
  static const BridgeTables tables;
  if (s <= 1.0) return {s * s, 2.0 * s, 2.0, 0.0, 0.0};
  if (s >= 2.0) return {0.0, 0.0, 0.0, 0.0, 0.0};
  const double t = s - 1.0;
  const double W0 = tables.w[0].eval(t);
  const double W1 = tables.w[1].eval(t);
  const double W2 = tables.w[2].eval(t);
  const double W3 = tables.w[3].eval(t);
  const double W4 = tables.w[4].eval(t);
  const double s2 = s * s;
  return {
      s2 * W0,
      2.0 * s * W0 + s2 * W1,
      2.0 * W0 + 4.0 * s * W1 + s2 * W2,
      6.0 * W1 + 6.0 * s * W2 + s2 * W3,
      12.0 * W2 + 8.0 * s * W3 + s2 * W4,
  };
}

int hess_count(int dim) { return dim * (dim + 1) / 2; }

int hess_index(int dim, int j, int k) {
  if (j > k) std::swap(j, k);
  int idx = 0;
  for (int a = 0; a < j; ++a) idx += dim - a;
  return idx + (k - j);
}

}  // namespace

CutoffProfile make_cutoff(const Grid& grid, double radius) {
  if (!(radius > 0.0)) throw OutOfRange("make_cutoff: radius must be positive");
  if (2.0 * radius > grid.extent()) {
    std::ostringstream msg;
    msg << "make_cutoff: support radius 2R = " << 2.0 * radius
        << " exceeds the box half-length " << grid.extent();
    throw RadiusTooLarge(msg.str());
  }

  const int dim = grid.dim();
  CutoffProfile cut;
  cut.grid = grid;
  cut.radius = radius;
  cut.phi.resize(grid.size());
  cut.lap_phi.resize(grid.size());
  cut.bilap_phi.resize(grid.size());
  for (int a = 0; a < dim; ++a) cut.grad_phi[a].resize(grid.size());
  cut.hess_phi.assign(hess_count(dim), std::vector<double>(grid.size()));

  const double R2 = radius * radius;
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto x = grid.coord(flat);
    const double r2 = grid.radius_sq(flat);
    const double r = std::sqrt(r2);
    const double s = r / radius;

    if (s <= 1.0) {
      // quadratic region stored without round-trip through s, so that
      // R^2 phi(x/R) == |x|^2 holds bit-for-bit
      cut.phi[flat] = r2;
      for (int a = 0; a < dim; ++a) cut.grad_phi[a][flat] = 2.0 * x[a];
      for (int j = 0; j < dim; ++j)
        for (int k = j; k < dim; ++k)
          cut.hess_phi[hess_index(dim, j, k)][flat] = (j == k) ? 2.0 : 0.0;
      cut.lap_phi[flat] = 2.0 * dim;
      cut.bilap_phi[flat] = 0.0;
      continue;
    }

    const auto g = weight_profile(s);
    cut.phi[flat] = R2 * g[0];
    const double inv_r = 1.0 / r;  // s > 1 here, so r > 0
    for (int a = 0; a < dim; ++a) cut.grad_phi[a][flat] = radius * g[1] * x[a] * inv_r;
    const double radial_coeff = g[2] - g[1] / s;
    const double iso_coeff = g[1] / s;
    for (int j = 0; j < dim; ++j)
      for (int k = j; k < dim; ++k) {
        double value = radial_coeff * (x[j] * inv_r) * (x[k] * inv_r);
        if (j == k) value += iso_coeff;
        cut.hess_phi[hess_index(dim, j, k)][flat] = value;
      }
    cut.lap_phi[flat] = g[2] + (dim - 1) * g[1] / s;
    const double bilap =
        g[4] + 2.0 * (dim - 1) * g[3] / s + (dim - 1) * (dim - 3) * (g[2] / (s * s) - g[1] / (s * s * s));
    cut.bilap_phi[flat] = bilap / R2;
  }
  return cut;
}

double variance(const Field& u) {
  require_finite(u, "variance");
  require_interior_mass(u, "variance");
  const double w = u.grid.weight();
  double acc = 0.0;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat)
    acc += u.grid.radius_sq(flat) * std::norm(u.values[flat]);
  return acc * w;
}

double variance_rate(const Field& u) {
  require_finite(u, "variance_rate");
  require_interior_mass(u, "variance_rate");
  const auto grad = gradient(u.grid, u.values);
  const double w = u.grid.weight();
  double acc = 0.0;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    const auto x = u.grid.coord(flat);
    Complex radial{0.0, 0.0};
    for (int a = 0; a < u.grid.dim(); ++a) radial += x[a] * grad[a][flat];
    acc += std::imag(radial * std::conj(u.values[flat]));
  }
  return acc * w;
}

LocalVirial local_virial(const Field& u, const CutoffProfile& cut) {
  require_finite(u, "local_virial");
  if (!(cut.grid == u.grid)) throw ValidationError("local_virial: cutoff built for another grid");

  const Grid& grid = u.grid;
  const int dim = grid.dim();
  const double w = grid.weight();
  const double p = u.params.power;
  const auto grad = gradient(grid, u.values);

  double z = 0.0, hess_term = 0.0, nl_term = 0.0, bilap_term = 0.0;
  double mass = 0.0, grad_sq = 0.0, lp1 = 0.0;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    const double density = std::norm(u.values[flat]);
    const double lp1_density = std::pow(density, 0.5 * (p + 1.0));
    z += cut.phi[flat] * density;
    nl_term += cut.lap_phi[flat] * lp1_density;
    bilap_term += cut.bilap_phi[flat] * density;
    mass += density;
    lp1 += lp1_density;
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const double h = cut.hess_phi[hess_index(dim, j, k)][flat];
        hess_term += h * std::real(grad[j][flat] * std::conj(grad[k][flat]));
        if (j == k) grad_sq += std::norm(grad[j][flat]);
      }
  }
  z *= w;
  hess_term *= 4.0 * w;
  nl_term *= 2.0 * (p - 1.0) / (p + 1.0) * w;
  bilap_term *= w;
  mass *= w;
  grad_sq *= w;
  lp1 *= w;

  const double energy = 0.5 * grad_sq - lp1 / (p + 1.0);
  const double np1 = u.params.np1();
  const double global_rhs = 4.0 * np1 * energy - (2.0 * np1 - 8.0) * grad_sq;

  LocalVirial lv;
  lv.z_R = z;
  lv.z_R_second = hess_term - nl_term - bilap_term;
  lv.A_R = lv.z_R_second - global_rhs;
  return lv;
}

double local_virial_rate(const Field& u, const CutoffProfile& cut) {
  require_finite(u, "local_virial_rate");
  const auto grad = gradient(u.grid, u.values);
  const double w = u.grid.weight();
  double acc = 0.0;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    Complex along{0.0, 0.0};
    for (int a = 0; a < u.grid.dim(); ++a) along += cut.grad_phi[a][flat] * grad[a][flat];
    acc += std::imag(along * std::conj(u.values[flat]));
  }
  return 2.0 * acc * w;
}

InequalityCheck exterior_error_check(const Field& u, const CutoffProfile& cut, double C1) {
  const LocalVirial lv = local_virial(u, cut);
  const double radius = cut.radius;
  const double r2_min = radius * radius;
  const double w = u.grid.weight();
  const double p = u.params.power;
  double mass_ext = 0.0, lp1_ext = 0.0;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    if (u.grid.radius_sq(flat) < r2_min) continue;
    const double density = std::norm(u.values[flat]);
    mass_ext += density;
    lp1_ext += std::pow(density, 0.5 * (p + 1.0));
  }
  mass_ext *= w;
  lp1_ext *= w;

  InequalityCheck check;
  check.lhs = std::abs(lv.A_R);
  check.rhs = C1 * (mass_ext / r2_min + lp1_ext);
  check.holds = check.lhs <= check.rhs + 1e-9 * std::abs(lv.z_R_second);
  return check;
}

double gamma_window(double lambda_plus, const ProblemParams& params) {
  if (!(lambda_plus > 1.0))
    throw LambdaNotSupercritical("gamma_window: requires lambda_plus > 1");
  const double np1 = params.np1();
  const double first = 2.0 * params.omega1 * (2.0 * np1 - 8.0);
  const double second = 4.0 * np1 * params.omega2 * std::pow(lambda_plus, 0.5 * (np1 - 4.0)) -
                        16.0 * params.omega1;
  return std::min(first, second);
}

ExteriorNorms exterior_norms(const Field& u, double radius) {
  const auto grad = gradient(u.grid, u.values);
  const double w = u.grid.weight();
  const double r2_min = radius * radius;
  const double p = u.params.power;
  ExteriorNorms ext;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    if (u.grid.radius_sq(flat) < r2_min) continue;
    const double density = std::norm(u.values[flat]);
    ext.mass += density;
    ext.lp1 += std::pow(density, 0.5 * (p + 1.0));
    for (int a = 0; a < u.grid.dim(); ++a) ext.grad_sq += std::norm(grad[a][flat]);
  }
  ext.mass *= w;
  ext.grad_sq *= w;
  ext.lp1 *= w;
  return ext;
}

double eta_exterior(const Field& u, const GroundState& gs, double radius) {
  require_finite(u, "eta_exterior");
  const ProblemParams& params = u.params;
  const ExteriorNorms ext = exterior_norms(u, radius);
  const double e_mass = 0.5 * params.s_c * (params.power - 1.0);            // on |u|_2
  const double e_grad = 0.5 * (1.0 - params.s_c) * (params.power - 1.0);    // on |grad u|_2
  const double num = std::pow(ext.mass, e_mass) * std::pow(ext.grad_sq, e_grad);
  const double den = std::pow(gs.norms.mass, e_mass) * std::pow(gs.norms.grad_norm_sq, e_grad);
  return num / den;
}

double rho_dyadic(const Field& u, double radius) {
  require_finite(u, "rho_dyadic");
  if (!(radius > 0.0)) throw OutOfRange("rho_dyadic: radius must be positive");
  const double w = u.grid.weight();
  const double two_sc = 2.0 * u.params.s_c;
  const double ladder_max = 0.5 * u.grid.extent();
  const double step = std::pow(2.0, 0.25);

  double sup = 0.0;
  for (double rp = radius; rp <= ladder_max * (1.0 + 1e-12); rp *= step) {
    const double lo = rp * rp, hi = 4.0 * rp * rp;
    double annulus = 0.0;
    for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
      const double r2 = u.grid.radius_sq(flat);
      if (r2 >= lo && r2 <= hi) annulus += std::norm(u.values[flat]);
    }
    sup = std::max(sup, annulus * w / std::pow(rp, two_sc));
  }
  return sup;
}

double angular_variation(const Field& u) {
  const Grid& grid = u.grid;
  const int dim = grid.dim();
  const std::size_t n = grid.points();

  double sup = 0.0;
  for (const auto& v : u.values) sup = std::max(sup, std::abs(v));
  if (sup == 0.0) return 0.0;

  double deviation = 0.0;

  // hyperoctahedral symmetries: axis permutations x sign flips, realized as
  // exact index remappings (x -> -x maps index i to (n - i) mod n)
  std::array<int, 3> perm = {0, 1, 2};
  std::sort(perm.begin(), perm.begin() + dim);
  do {
    for (int flips = 0; flips < (1 << dim); ++flips) {
      std::array<std::size_t, 3> mapped = {0, 0, 0};
      for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
        const auto idx = grid.unflatten(flat);
        for (int a = 0; a < dim; ++a) {
          std::size_t src = idx[perm[a]];
          if (flips & (1 << a)) src = (n - src) % n;
          mapped[a] = src;
        }
        deviation = std::max(deviation,
                             std::abs(u.values[flat] - u.values[grid.flatten(mapped)]));
      }
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + dim));

  // points sharing an exact |x|^2 must carry equal values
  std::map<long, Complex> bins;
  const long half = static_cast<long>(n) / 2;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    const auto idx = grid.unflatten(flat);
    long key = 0;
    for (int a = 0; a < dim; ++a) {
      const long off = static_cast<long>(idx[a]) - half;
      key += off * off;
    }
    auto [it, inserted] = bins.emplace(key, u.values[flat]);
    if (!inserted) deviation = std::max(deviation, std::abs(u.values[flat] - it->second));
  }

  return deviation / sup;
}

namespace {

struct NormalizedFrame {
  double beta = 1.0;    // mass_rescale exponent factor
  double factor = 1.0;  // beta^2 M(Q)/M(u): common scale of r0 and r0'
  double lambda_plus = 0.0;
  double d_core = 0.0;  // -16 w1 l^2 + 4 N(p-1) w2 l^(N(p-1)/2)
  DichotomyReport report;
};

NormalizedFrame normalized_frame(const Field& u, const GroundState& gs, const char* where) {
  NormalizedFrame frame;
  frame.report = classify(u, gs);
  if (frame.report.verdict != Verdict::PossibleDivergence) {
    std::ostringstream msg;
    msg << where << ": verdict " << to_string(frame.report.verdict)
        << ", the bound applies to PossibleDivergence data only";
    throw NotCase2(msg.str());
  }
  frame.lambda_plus = frame.report.lambda_plus;
  const ProblemParams& params = u.params;
  frame.d_core = -16.0 * params.omega1 * frame.lambda_plus * frame.lambda_plus +
                 4.0 * params.np1() * params.omega2 *
                     std::pow(frame.lambda_plus, 0.5 * params.np1());
  if (!(frame.d_core > 0.0))
    throw NegativeDenominator(std::string(where) + ": scaled-variance denominator <= 0");
  frame.beta = mass_rescale_beta(frame.report.quantities.mass, gs.norms.mass, params);
  frame.factor = frame.beta * frame.beta * gs.norms.mass / frame.report.quantities.mass;
  return frame;
}

VirialReport bound_from(double r0, double r0_prime) {
  VirialReport report;
  report.r0 = r0;
  report.r0_prime = r0_prime;
  report.t_b = r0_prime + std::sqrt(r0_prime * r0_prime + 2.0 * r0);
  return report;
}

}  // namespace

VirialReport tb_variance(const Field& u, const GroundState& gs) {
  const NormalizedFrame frame = normalized_frame(u, gs, "tb_variance");
  const double denom = frame.d_core * gs.norms.energy;
  const double r0 = frame.factor * variance(u) / denom;
  const double r0p = frame.factor * 4.0 * variance_rate(u) / denom;

  VirialReport report = bound_from(r0, r0p);
  report.variant = VirialVariant::Variance;
  report.lambda_plus = frame.lambda_plus;
  report.gamma_max = gamma_window(frame.lambda_plus, u.params);
  report.mass_beta = frame.beta;
  return report;
}

VirialReport tb_localized(const Field& u, const GroundState& gs, double gamma,
                          double radius, const LocalizedOptions& opts) {
  const NormalizedFrame frame = normalized_frame(u, gs, "tb_localized");
  const double gamma_max = gamma_window(frame.lambda_plus, u.params);
  if (!(gamma > 0.0 && gamma < gamma_max)) {
    std::ostringstream msg;
    msg << "tb_localized: gamma = " << gamma << " outside (0, " << gamma_max << ")";
    throw GammaOutOfWindow(msg.str());
  }
  if (!(radius >= opts.C2 / std::sqrt(gamma))) {
    std::ostringstream msg;
    msg << "tb_localized: R = " << radius << " below C2 gamma^(-1/2) = "
        << opts.C2 / std::sqrt(gamma);
    throw RadiusTooSmall(msg.str());
  }

  // radius is stated in the mass-normalized frame; evaluate on u's grid at beta R
  const CutoffProfile cut = make_cutoff(u.grid, frame.beta * radius);
  const double lam2 = frame.lambda_plus * frame.lambda_plus;
  const double denom = opts.C * gs.norms.energy * (frame.d_core - gamma * lam2);
  if (!(denom > 0.0)) throw NegativeDenominator("tb_localized: denominator <= 0");

  const LocalVirial lv = local_virial(u, cut);
  const double r0 = frame.factor * lv.z_R / denom;
  const double r0p = frame.factor * local_virial_rate(u, cut) / denom;

  VirialReport report = bound_from(r0, r0p);
  report.variant = VirialVariant::Localized;
  report.lambda_plus = frame.lambda_plus;
  report.gamma = gamma;
  report.gamma_max = gamma_max;
  report.radius = radius;
  report.mass_beta = frame.beta;
  return report;
}

VirialReport tb_radial(const Field& u, const GroundState& gs, double gamma,
                       double radius, const RadialOptions& opts) {
  const double variation = angular_variation(u);
  if (!(variation < opts.angular_tol)) {
    std::ostringstream msg;
    msg << "tb_radial: angular variation " << variation << " exceeds " << opts.angular_tol;
    throw NotRadial(msg.str());
  }

  const NormalizedFrame frame = normalized_frame(u, gs, "tb_radial");
  const double gamma_max = gamma_window(frame.lambda_plus, u.params);
  if (!(gamma > 0.0 && gamma < gamma_max)) {
    std::ostringstream msg;
    msg << "tb_radial: gamma = " << gamma << " outside (0, " << gamma_max << ")";
    throw GammaOutOfWindow(msg.str());
  }

  const double lam2 = frame.lambda_plus * frame.lambda_plus;
  const double den_core = frame.d_core - gamma * lam2;
  if (!(den_core > 0.0)) throw NegativeDenominator("tb_radial: denominator <= 0");
  const double s_c = u.params.s_c;
  const double r_floor = std::max(
      1.0 / std::sqrt(gamma),
      std::pow(2.0 * opts.C_gamma / den_core, 1.0 / (2.0 * (1.0 - s_c))));
  if (!(radius > r_floor)) {
    std::ostringstream msg;
    msg << "tb_radial: R = " << radius << " below the floor " << r_floor;
    throw RadiusTooSmall(msg.str());
  }

  const double c_tilde = 2.0 * opts.C_Q;
  const CutoffProfile cut = make_cutoff(u.grid, frame.beta * radius);
  const double denom = c_tilde * gs.norms.energy * den_core;
  const LocalVirial lv = local_virial(u, cut);
  const double r0 = frame.factor * lv.z_R / denom;
  const double r0p = frame.factor * local_virial_rate(u, cut) / denom;

  VirialReport report = bound_from(r0, r0p);
  report.variant = VirialVariant::Radial;
  report.lambda_plus = frame.lambda_plus;
  report.gamma = gamma;
  report.gamma_max = gamma_max;
  report.radius = radius;
  report.mass_beta = frame.beta;

  // checkable radial tail inequality, in the normalized frame
  const ExteriorNorms ext = exterior_norms(u, frame.beta * radius);
  InequalityCheck check;
  check.lhs = frame.factor * ext.lp1;
  check.rhs = gamma * frame.factor * ext.grad_sq +
              opts.C_gamma * opts.C_Q / std::pow(radius, 2.0 * (1.0 - s_c));
  check.holds = check.lhs <= check.rhs;
  report.radial_gn = check;
  return report;
}

}  // namespace nlsv
