// Scenario-driven front end: validate a scenario, run the experiment, emit
// meta.json / report.json / trajectory.csv into the output directory.

#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "nlsv/errors.hpp"
#include "nlsv/scenario.hpp"
#include "nlsv/version.hpp"

namespace fs = std::filesystem;

namespace {

int run_command(const std::vector<std::string>& scenario_paths, const std::string& out_dir,
                int jobs) {
  struct Job {
    nlsv::Scenario scenario;
    std::string label;
  };
  std::vector<Job> queue;
  for (const auto& path : scenario_paths) {
    nlsv::Scenario s;
    try {
      s = nlsv::load_scenario(path);
    } catch (const nlsv::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    if (!out_dir.empty()) {
      // isolated per-scenario subdirectories in batch mode
      s.output_dir = (scenario_paths.size() > 1)
                         ? (fs::path(out_dir) / fs::path(path).stem()).string()
                         : out_dir;
    } else if (s.output_dir.empty()) {
      s.output_dir = fs::path(path).stem().string() + ".out";
    }
    queue.push_back({std::move(s), path});
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{0};
  std::mutex io_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= queue.size()) return;
      const nlsv::RunResult result = nlsv::run_scenario(queue[i].scenario);
      std::lock_guard<std::mutex> lock(io_mutex);
      if (result.exit_code == 0) {
        std::cout << queue[i].label << ": ok -> " << queue[i].scenario.output_dir << "\n";
      } else {
        std::cerr << queue[i].label << ": " << result.message << "\n";
      }
      int expected = worst.load();
      while (expected < result.exit_code &&
             !worst.compare_exchange_weak(expected, result.exit_code)) {
      }
    }
  };

  const int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(queue.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return worst.load();
}

int groundstate_command(int dim, double power, double extent, std::size_t points,
                        const std::string& out_dir, double tolerance, double mu) {
  try {
    const nlsv::ProblemParams params = nlsv::make_params(dim, power);
    const nlsv::Grid grid(dim, extent, points);
    nlsv::SolverOptions opts;
    opts.tolerance = tolerance;
    opts.stationary_coefficient = mu;
    const nlsv::GroundState gs = nlsv::cached_ground_state(params, grid, opts);

    fs::create_directories(out_dir);
    nlsv::save_ground_state(gs, (fs::path(out_dir) / "groundstate.bin").string());

    std::printf("ground state: N=%d p=%g L=%g points=%zu\n", dim, power, extent, points);
    std::printf("  iterations   %d\n", gs.iterations);
    std::printf("  residual     %.3e\n", gs.residual);
    std::printf("  mass         %.17g\n", gs.norms.mass);
    std::printf("  energy       %.17g\n", gs.norms.energy);
    std::printf("  C_GN         %.17g\n", gs.cgn);
    return 0;
  } catch (const nlsv::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlsv::OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlsv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nls-virial: dichotomy, virial blow-up bounds and soliton diagnostics "
               "for the mass-supercritical NLS"};
  app.set_version_flag("--version", nlsv::kVersion);
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run scenario files");
  std::vector<std::string> scenarios;
  std::string out_dir;
  int jobs = 1;
  run->add_option("scenario", scenarios, "scenario JSON file(s)")->required()->expected(-1);
  run->add_option("--out", out_dir, "output directory (per-scenario subdirs in batch mode)");
  run->add_option("--jobs", jobs, "concurrent scenarios")->check(CLI::PositiveNumber);

  auto* gs = app.add_subcommand("groundstate", "solve and export a ground state");
  int dim = 1;
  double power = 0.0, extent = 0.0, tolerance = 1e-10, mu = -1.0;
  std::size_t points = 0;
  std::string gs_out = ".";
  gs->add_option("--N", dim, "spatial dimension")->required();
  gs->add_option("--p", power, "nonlinearity power")->required();
  gs->add_option("--L", extent, "box half-length")->required();
  gs->add_option("--points", points, "points per axis (power of two)")->required();
  gs->add_option("--out", gs_out, "output directory");
  gs->add_option("--tol", tolerance, "residual tolerance");
  gs->add_option("--mu", mu, "stationary coefficient (default 1 - s_c)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_command(scenarios, out_dir, jobs);
  if (gs->parsed()) return groundstate_command(dim, power, extent, points, gs_out, tolerance, mu);
  return 1;
}
