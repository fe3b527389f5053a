#include "nlsv/groundstate.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <vector>

#include "nlsv/errors.hpp"
#include "nlsv/fft.hpp"
#include "nlsv/spectral.hpp"

namespace nlsv {

namespace {

double stationary_mu(const ProblemParams& params, double requested) {
  return (requested > 0.0) ? requested : 1.0 - params.s_c;
}

// |q|^(p-1) q: the equation's nonlinearity, sign-safe for non-integer p.
inline double power_nonlinearity(double q, double p) {
  return std::pow(std::abs(q), p - 1.0) * q;
}

std::vector<double> squared_wavenumbers(const Grid& grid) {
  const auto& waves = grid.axis_wavenumbers();
  const std::size_t n = grid.points();
  std::vector<double> k2(grid.size());
  std::array<std::size_t, 3> idx = {0, 0, 0};
  for (std::size_t flat = 0; flat < k2.size(); ++flat) {
    double acc = 0.0;
    for (int a = 0; a < grid.dim(); ++a) acc += waves[idx[a]] * waves[idx[a]];
    k2[flat] = acc;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return k2;
}

// Interior mask: points with max_a |x_a| <= (1 - band) L, where the
// truncated tails of the whole-space profile are not yet felt.
std::vector<char> interior_mask(const Grid& grid, double band) {
  const double limit = (1.0 - band) * grid.extent();
  std::vector<char> mask(grid.size());
  for (std::size_t flat = 0; flat < mask.size(); ++flat) {
    const auto x = grid.coord(flat);
    double max_abs = 0.0;
    for (int a = 0; a < grid.dim(); ++a) max_abs = std::max(max_abs, std::abs(x[a]));
    mask[flat] = (max_abs <= limit) ? 1 : 0;
  }
  return mask;
}

}  // namespace

double soliton_fwhm_estimate(const ProblemParams& params, double stationary_coefficient) {
  const double mu = stationary_mu(params, stationary_coefficient);
  const double p = params.power;
  return 4.0 / (std::sqrt(mu) * (p - 1.0)) * std::acosh(std::pow(2.0, 0.5 * (p - 1.0)));
}

Field soliton_1d_closed_form(const ProblemParams& params, const Grid& grid,
                             double stationary_coefficient) {
  if (params.dim != 1 || grid.dim() != 1)
    throw WrongDimension("soliton_1d_closed_form: defined for N = 1 only");
  const double mu = stationary_mu(params, stationary_coefficient);
  const double p = params.power;
  const double amplitude = std::pow(mu * (p + 1.0) / 2.0, 1.0 / (p - 1.0));
  const double rate = std::sqrt(mu) * (p - 1.0) / 2.0;

  Field q(grid, params);
  const auto& coords = grid.axis_coords();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double sech = 1.0 / std::cosh(rate * coords[i]);
    q.values[i] = amplitude * std::pow(sech, 2.0 / (p - 1.0));
  }
  return q;
}

GroundState solve_ground_state(const ProblemParams& params, const Grid& grid,
                               const SolverOptions& opts) {
  if (grid.dim() != params.dim) throw WrongDimension("solve_ground_state: grid/params dim mismatch");
  const double mu = stationary_mu(params, opts.stationary_coefficient);
  const double p = params.power;

  const double fwhm = soliton_fwhm_estimate(params, mu);
  if (fwhm / grid.spacing() < opts.min_cells_per_fwhm) {
    std::ostringstream msg;
    msg << "solve_ground_state: " << fwhm / grid.spacing()
        << " cells across the half-maximum, need " << opts.min_cells_per_fwhm;
    throw GridTooCoarse(msg.str());
  }

  const std::size_t size = grid.size();
  const double gamma = p / (p - 1.0);
  const auto k2 = squared_wavenumbers(grid);
  const auto interior = interior_mask(grid, opts.edge_band);

  // Radial sech ansatz as the seed in any dimension.
  std::vector<double> q(size);
  {
    const double amplitude = std::pow(mu * (p + 1.0) / 2.0, 1.0 / (p - 1.0));
    const double rate = std::sqrt(mu) * (p - 1.0) / 2.0;
    for (std::size_t flat = 0; flat < size; ++flat) {
      const double r = std::sqrt(grid.radius_sq(flat));
      q[flat] = amplitude * std::pow(1.0 / std::cosh(rate * r), 2.0 / (p - 1.0));
    }
  }

  std::vector<Complex> q_hat(size), w_hat(size), buf(size);
  for (std::size_t i = 0; i < size; ++i) q_hat[i] = q[i];
  fft_forward(grid, q_hat);

  GroundState gs;
  gs.residual_history.reserve(64);

  bool converged = false;
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    // Stabilization factor S = <(mu - Lap) q, q> / <|q|^(p-1) q, q>;
    // quadrature weights cancel.
    double mass_sum = 0.0, nl_sum = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      mass_sum += q[i] * q[i];
      w_hat[i] = power_nonlinearity(q[i], p);
      nl_sum += w_hat[i].real() * q[i];
    }
    double grad_sum = 0.0;
    for (std::size_t i = 0; i < size; ++i) grad_sum += k2[i] * std::norm(q_hat[i]);
    grad_sum /= static_cast<double>(size);
    const double stab = std::pow((mu * mass_sum + grad_sum) / nl_sum, gamma);

    fft_forward(grid, w_hat);
    for (std::size_t i = 0; i < size; ++i) {
      q_hat[i] = stab * w_hat[i] / (mu + k2[i]);
      buf[i] = -k2[i] * q_hat[i];  // spectral Laplacian of the new iterate
    }
    std::vector<Complex> q_new_c = q_hat;
    fft_inverse(grid, q_new_c);
    fft_inverse(grid, buf);

    double change = 0.0, sup = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      const double qn = q_new_c[i].real();
      change = std::max(change, std::abs(qn - q[i]));
      sup = std::max(sup, std::abs(qn));
      if (interior[i]) {
        const double r = -mu * qn + buf[i].real() + power_nonlinearity(qn, p);
        residual = std::max(residual, std::abs(r));
      }
      q[i] = qn;
    }
    residual /= sup;
    gs.residual_history.push_back(residual);
    gs.iterations = iter;

    if (!std::isfinite(sup) || !std::isfinite(residual))
      throw NoConvergence("solve_ground_state: iteration diverged to non-finite values");
    if (change < opts.step_tolerance * std::max(1.0, sup) && residual < opts.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "solve_ground_state: no convergence after " << opts.max_iterations
        << " iterations (residual " << gs.residual_history.back() << ")";
    throw NoConvergence(msg.str());
  }

  // Normalize: real and positive by construction from the positive seed;
  // flip sign if an (unexpected) negative branch was picked up.
  double center_value = q[grid.flatten({grid.points() / 2, grid.points() / 2, grid.points() / 2})];
  if (center_value < 0.0)
    for (auto& v : q) v = -v;

  gs.profile = Field(grid, params);
  for (std::size_t i = 0; i < size; ++i) gs.profile.values[i] = q[i];
  gs.residual = gs.residual_history.back();
  gs.stationary_coefficient = mu;
  gs.norms = conserved(gs.profile);
  gs.cgn = sharp_gn_constant(gs);
  return gs;
}

double sharp_gn_constant(const GroundState& gs) {
  const ProblemParams& params = gs.profile.params;
  const double grad_exp = 0.25 * params.np1();  // on |grad Q|_2^2
  const double mass_exp = 1.0 - 0.25 * (params.dim - 2) * (params.power - 1.0);
  return gs.norms.lp1_norm /
         (std::pow(gs.norms.grad_norm_sq, grad_exp) * std::pow(gs.norms.mass, mass_exp));
}

double gn_check(const Field& u, double cgn) {
  const ConservedQuantities q = conserved(u);
  const ProblemParams& params = u.params;
  const double grad_exp = 0.25 * params.np1();
  const double mass_exp = 1.0 - 0.25 * (params.dim - 2) * (params.power - 1.0);
  return cgn * std::pow(q.grad_norm_sq, grad_exp) * std::pow(q.mass, mass_exp) - q.lp1_norm;
}

namespace {

constexpr char kMagic[8] = {'N', 'L', 'S', 'V', 'G', 'S', '1', '\0'};

template <typename T>
void write_raw(std::FILE* f, const T& value) {
  if (std::fwrite(&value, sizeof(T), 1, f) != 1) throw IoError("ground state write failed");
}

template <typename T>
void read_raw(std::FILE* f, T& value) {
  if (std::fread(&value, sizeof(T), 1, f) != 1) throw IoError("ground state read failed");
}

}  // namespace

void save_ground_state(const GroundState& gs, const std::string& path) {
  // Fixed little-endian layout (this library targets LE hosts).
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) throw IoError("save_ground_state: cannot open " + path);
  try {
    if (std::fwrite(kMagic, 1, 8, f) != 8) throw IoError("ground state write failed");
    write_raw(f, static_cast<std::int32_t>(gs.profile.params.dim));
    write_raw(f, gs.profile.params.power);
    write_raw(f, gs.profile.grid.extent());
    write_raw(f, static_cast<std::uint64_t>(gs.profile.grid.points()));
    write_raw(f, gs.stationary_coefficient);
    write_raw(f, static_cast<std::int32_t>(gs.iterations));
    write_raw(f, gs.residual);
    for (const auto& v : gs.profile.values) write_raw(f, v.real());
  } catch (...) {
    std::fclose(f);
    std::remove(path.c_str());
    throw;
  }
  std::fclose(f);
}

GroundState load_ground_state(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) throw IoError("load_ground_state: cannot open " + path);
  GroundState gs;
  try {
    char magic[8];
    if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, kMagic, 8) != 0)
      throw IoError("load_ground_state: bad magic in " + path);
    std::int32_t dim = 0, iterations = 0;
    double power = 0.0, extent = 0.0, mu = 0.0, residual = 0.0;
    std::uint64_t points = 0;
    read_raw(f, dim);
    read_raw(f, power);
    read_raw(f, extent);
    read_raw(f, points);
    read_raw(f, mu);
    read_raw(f, iterations);
    read_raw(f, residual);

    const ProblemParams params = make_params(dim, power);
    const Grid grid(dim, extent, static_cast<std::size_t>(points));
    gs.profile = Field(grid, params);
    for (auto& v : gs.profile.values) {
      double re = 0.0;
      read_raw(f, re);
      v = re;
    }
    gs.stationary_coefficient = mu;
    gs.iterations = iterations;
    gs.residual = residual;
  } catch (...) {
    std::fclose(f);
    throw;
  }
  std::fclose(f);
  gs.norms = conserved(gs.profile);
  gs.cgn = sharp_gn_constant(gs);
  return gs;
}

GroundState cached_ground_state(const ProblemParams& params, const Grid& grid,
                                const SolverOptions& opts, const std::string& cache_dir) {
  std::string dir = cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("NLS_VIRIAL_CACHE");
    if (env != nullptr) dir = env;
  }
  if (dir.empty()) return solve_ground_state(params, grid, opts);

  const double mu = stationary_mu(params, opts.stationary_coefficient);
  std::ostringstream name;
  name.precision(17);
  name << "gs_N" << params.dim << "_p" << params.power << "_L" << grid.extent() << "_n"
       << grid.points() << "_mu" << mu << "_tol" << opts.tolerance << ".bin";
  const std::filesystem::path path = std::filesystem::path(dir) / name.str();

  if (std::filesystem::exists(path)) {
    try {
      GroundState gs = load_ground_state(path.string());
      if (gs.profile.grid == grid && gs.residual <= opts.tolerance) return gs;
    } catch (const Error&) {
      // stale or truncated cache entry: fall through and solve
    }
  }

  GroundState gs = solve_ground_state(params, grid, opts);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!ec) {
    // temp + rename keeps concurrent runs from seeing partial files
    const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    try {
      save_ground_state(gs, tmp.string());
      std::filesystem::rename(tmp, path, ec);
      if (ec) std::filesystem::remove(tmp, ec);
    } catch (const IoError&) {
      // cache failures are not fatal; the solve succeeded
    }
  }
  return gs;
}

}  // namespace nlsv
