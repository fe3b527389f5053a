#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlsv/errors.hpp"
#include "nlsv/modulation.hpp"
#include "nlsv/spectral.hpp"
#include "nlsv/transform.hpp"
#include "oracles.hpp"

using nlsv::Field;
using oracles::rel_diff;

namespace {

const nlsv::GroundState& septic_gs() {
  static nlsv::GroundState gs =
      nlsv::solve_ground_state(nlsv::make_params(1, 7.0), nlsv::Grid(1, 20.0, 512));
  return gs;
}

// e^{i theta} lambda^{N/2} Q(lambda (x - a)) on Q's grid
Field orbit_element(const nlsv::GroundState& gs, double theta, double lambda, double a) {
  Field u = gs.profile;
  u.values = nlsv::resample_scale(u.grid, u.values, lambda);
  const double amp = std::pow(lambda, 0.5 * u.grid.dim());
  for (auto& v : u.values) v *= amp * std::polar(1.0, theta);
  if (a != 0.0) u.values = nlsv::translate(u.grid, u.values, {a, 0.0, 0.0});
  return u;
}

}  // namespace

TEST_CASE("hypotheses check") {
  const auto& gs = septic_gs();

  SUBCASE("orbit elements satisfy both conditions with zero slack") {
    const Field u = orbit_element(gs, 0.9, 1.3, 0.0);
    const auto [energy_ok, grad_ok] = nlsv::hypotheses_check(u, gs, 1.3, 1e-6);
    CHECK(energy_ok);
    CHECK(grad_ok);
  }

  SUBCASE("the ground state fails badly at lambda = 2") {
    // E-ratio 1 vs omega1*4 - omega2*8 = -4; gradient ratio 1 vs 2
    const auto [energy_ok, grad_ok] = nlsv::hypotheses_check(gs.profile, gs, 2.0, 0.01);
    CHECK_FALSE(energy_ok);
    CHECK_FALSE(grad_ok);
  }

  SUBCASE("rho = 0 demands exact parameter match") {
    const auto [energy_ok, grad_ok] = nlsv::hypotheses_check(gs.profile, gs, 1.0, 0.0);
    CHECK(energy_ok);
    CHECK(grad_ok);
    const auto [e2, g2] = nlsv::hypotheses_check(gs.profile, gs, 1.1, 0.0);
    CHECK_FALSE(e2);
    CHECK_FALSE(g2);
  }

  SUBCASE("mass mismatch is rejected") {
    CHECK_THROWS_AS(nlsv::hypotheses_check(oracles::scaled(gs.profile, 2.0), gs, 1.0, 0.1),
                    nlsv::MassMismatch);
  }
}

TEST_CASE("fit recovers orbit elements") {
  const auto& gs = septic_gs();
  const double h = gs.profile.grid.spacing();

  SUBCASE("lattice shift with a phase") {
    const double a = 16.0 * h;
    const Field u = orbit_element(gs, std::numbers::pi / 4.0, 1.0, a);
    const auto fit_result = nlsv::fit(u, gs, 1.0);
    CHECK(std::abs(fit_result.theta - std::numbers::pi / 4.0) < 1e-6);
    CHECK(std::abs(fit_result.x0[0] - a) < h / 10.0);
    CHECK(fit_result.dist_l2 < 1e-8);
  }

  SUBCASE("off-lattice shift") {
    const double a = 1.3;  // 16.64 cells
    const Field u = orbit_element(gs, 1.9, 1.0, a);
    const auto fit_result = nlsv::fit(u, gs, 1.0);
    CHECK(std::abs(fit_result.x0[0] - a) < h / 10.0);
    CHECK(std::abs(fit_result.theta - 1.9) < 1e-6);
    CHECK(fit_result.dist_l2 < 1e-8);
  }

  SUBCASE("scale-2 orbit element") {
    const Field u = orbit_element(gs, 0.0, 2.0, 0.0);
    const auto fit_result = nlsv::fit(u, gs, 2.0);
    CHECK(fit_result.theta < 1e-6);
    CHECK(std::abs(fit_result.x0[0]) < h / 10.0);
    CHECK(fit_result.dist_l2 < 1e-6);
  }

  SUBCASE("unresolvable scale is rejected") {
    CHECK_THROWS_AS(nlsv::fit(gs.profile, gs, 50.0), nlsv::ScaleUnresolvable);
  }
}

TEST_CASE("first-order response to an orthogonal perturbation") {
  const auto& gs = septic_gs();
  const nlsv::Grid& grid = gs.profile.grid;
  const std::size_t n = grid.points();

  // real, even, band-limited bump: orthogonal to both symmetry directions
  // (i Q is imaginary, Q' is odd), normalized to unit L^2
  Field bump = oracles::random_localized_field(gs.profile.params, grid, 77, 3, 0.15);
  for (auto& v : bump.values) v = v.real();
  for (std::size_t i = 1; i < n; ++i) {
    const auto sym = 0.5 * (bump.values[i] + bump.values[n - i]);
    bump.values[i] = sym;
    bump.values[n - i] = sym;
  }
  const double norm = std::sqrt(nlsv::conserved(bump).mass);
  for (auto& v : bump.values) v /= norm;

  const double delta = 0.01;
  Field u = gs.profile;
  for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] += delta * bump.values[i];
  const auto fit_result = nlsv::fit(u, gs, 1.0);
  CHECK(fit_result.dist_l2 >= 0.009);
  CHECK(fit_result.dist_l2 <= 0.011);
}

TEST_CASE("gauge and translation covariance") {
  const auto& gs = septic_gs();
  const double h = gs.profile.grid.spacing();
  const Field u = orbit_element(gs, 0.4, 1.0, 0.7);  // generic starting point
  const auto base = nlsv::fit(u, gs, 1.0);

  SUBCASE("phase rotation shifts theta only") {
    const double alpha = 1.234;
    const auto rotated = nlsv::fit(oracles::scaled(u, std::polar(1.0, alpha)), gs, 1.0);
    double dtheta = std::fmod(rotated.theta - base.theta - alpha, 2.0 * std::numbers::pi);
    if (dtheta > std::numbers::pi) dtheta -= 2.0 * std::numbers::pi;
    if (dtheta < -std::numbers::pi) dtheta += 2.0 * std::numbers::pi;
    CHECK(std::abs(dtheta) < 1e-10);
    CHECK(std::abs(rotated.x0[0] - base.x0[0]) < 1e-10);
    CHECK(std::abs(rotated.dist_l2 - base.dist_l2) < 1e-10);
    CHECK(std::abs(rotated.dist_h1dot - base.dist_h1dot) < 1e-10);
  }

  SUBCASE("translation shifts x0 only") {
    const double a = 12.0 * h;
    Field moved = u;
    moved.values = nlsv::translate(moved.grid, moved.values, {a, 0.0, 0.0});
    const auto shifted = nlsv::fit(moved, gs, 1.0);
    CHECK(std::abs(shifted.x0[0] - base.x0[0] - a) < h / 10.0);
    CHECK(std::abs(shifted.theta - base.theta) < 1e-8);
    CHECK(std::abs(shifted.dist_l2 - base.dist_l2) < 1e-9);
  }
}

TEST_CASE("the optimizer never loses to the identity candidate") {
  const auto& gs = septic_gs();
  const nlsv::Grid& grid = gs.profile.grid;
  for (unsigned seed = 0; seed < 10; ++seed) {
    Field u = oracles::random_localized_field(gs.profile.params, grid, 200 + seed, 4, 0.15);
    // mix in some soliton so the correlation landscape is nontrivial
    for (std::size_t i = 0; i < u.values.size(); ++i)
      u.values[i] = gs.profile.values[i] + 0.3 * u.values[i];

    const auto fit_result = nlsv::fit(u, gs, 1.0);
    double unfitted_sq = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
      unfitted_sq += std::norm(u.values[i] - gs.profile.values[i]);
    const double unfitted = std::sqrt(unfitted_sq * grid.weight());
    CHECK(fit_result.dist_l2 <= unfitted * (1.0 + 1e-12));
  }
}

TEST_CASE("beta consistency: rescale-then-fit realizes the unscaled statement") {
  const auto& gs = septic_gs();
  const auto params = gs.profile.params;
  const nlsv::Grid& grid = gs.profile.grid;

  // data off the mass shell: u = c Q with beta = (c^2)^3
  const double c = 1.03;
  const Field u = oracles::scaled(gs.profile, c);
  const double mass_u = nlsv::conserved(u).mass;
  const double beta = nlsv::mass_rescale_beta(mass_u, gs.norms.mass, params);

  const Field v = nlsv::mass_rescale(u, gs);
  const double lambda = 1.0;
  const auto fit_v = nlsv::fit(v, gs, lambda);

  // unscaled template: e^{i theta} lambda^{N/2} beta^{-2/(p-1)} Q(lambda(x/beta - x0))
  Field templ = gs.profile;
  templ.values = nlsv::resample_scale(grid, templ.values, lambda / beta);
  templ.values = nlsv::translate(grid, templ.values, {beta * fit_v.x0[0], 0.0, 0.0});
  const double amp = std::pow(lambda, 0.5 * params.dim) * std::pow(beta, -2.0 / (params.power - 1.0));
  const nlsv::Complex phase = std::polar(amp, fit_v.theta);

  double l2_sq = 0.0;
  std::vector<nlsv::Complex> diff(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    diff[i] = u.values[i] - phase * templ.values[i];
    l2_sq += std::norm(diff[i]);
  }
  const double direct_l2 = std::sqrt(l2_sq * grid.weight());
  const double predicted_l2 =
      std::pow(beta, 0.5 * params.dim - 2.0 / (params.power - 1.0)) * fit_v.dist_l2;
  CHECK(std::abs(direct_l2 - predicted_l2) < 1e-6 * std::max(1.0, predicted_l2));

  const auto grad = nlsv::gradient(grid, diff);
  double h1_sq = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) h1_sq += std::norm(grad[0][i]);
  const double direct_h1 = std::sqrt(h1_sq * grid.weight());
  const double predicted_h1 =
      std::pow(beta, 0.5 * params.dim - 2.0 / (params.power - 1.0) - 1.0) * fit_v.dist_h1dot;
  CHECK(std::abs(direct_h1 - predicted_h1) < 1e-6 * std::max(1.0, predicted_h1));
}
