#include <chrono>
#include <fstream>
#include <memory>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "crsim/text_format.hpp"
#include "crsim/tomography.hpp"
#include "manifest.hpp"

namespace crsim::cli {

namespace {

struct TomoOptions {
  std::string calibration;
  bool synthetic = false;
  int durations = 64;
  double t_max_ns = 1200.0;
  int shots = 0;
  std::uint64_t seed = 0;
  std::string out = "tomo_out";
};

nlohmann::json coefficients_json(const CRCoefficients& c) {
  return {{"f_zi", c.f_zi}, {"f_zx", c.f_zx}, {"f_zy", c.f_zy}, {"f_zz", c.f_zz},
          {"f_ix", c.f_ix}, {"f_iy", c.f_iy}, {"f_iz", c.f_iz}};
}

void run_tomo(const TomoOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (opt.durations < 2) throw std::invalid_argument("--durations must be >= 2");
  if (!(opt.t_max_ns > 0)) throw std::invalid_argument("--t-max must be positive");
  if (opt.shots < 0) throw std::invalid_argument("--shots must be >= 0");

  CalibrationTable table;
  std::string cal_path;
  if (!opt.synthetic) std::tie(table, cal_path) = resolve_calibration(opt.calibration);
  const CalibrationRecord& record =
      table.records().empty() ? table.defaults() : table.records().front();

  std::vector<double> grid(opt.durations);
  for (int i = 0; i < opt.durations; ++i)
    grid[i] = opt.t_max_ns * static_cast<double>(i) / (opt.durations - 1);

  const auto series = simulate_ht(record.coeffs, grid, opt.shots, opt.seed);
  const auto ramsey = simulate_ramsey_zi(record.coeffs, grid, opt.shots, opt.seed);

  const std::filesystem::path dir(opt.out);
  std::filesystem::create_directories(dir);
  write_series_csv(dir / "series.csv", series);
  write_series_csv(dir / "ramsey.csv", ramsey);

  const FitResult fit = fit_cr_coefficients(series);
  const ZiFitDetail zi = fit_zi_detailed(ramsey, fit.coefficients);

  CRCoefficients fitted = fit.coefficients;
  fitted.f_zi = zi.f_zi_mhz;
  nlohmann::json j;
  j["fitted"] = coefficients_json(fitted);
  j["in_plane"] = {{"residual_rms", fit.residual_rms},
                   {"converged", fit.converged},
                   {"below_sensitivity", fit.below_sensitivity}};
  j["ramsey"] = {{"phase_residual_rms_rad", zi.phase_residual_rms},
                 {"converged", zi.converged},
                 {"below_sensitivity", zi.below_sensitivity}};
  j["reference"] = coefficients_json(record.coeffs);
  {
    std::ofstream out(dir / "fit.json");
    if (!out) throw std::runtime_error("cannot write fit.json in " + dir.string());
    out << j.dump(2) << "\n";
  }

  RunManifest manifest;
  manifest.command = "tomo";
  manifest.flags = {{"calibration", cal_path},
                    {"durations", std::to_string(opt.durations)},
                    {"out", opt.out},
                    {"seed", std::to_string(opt.seed)},
                    {"shots", std::to_string(opt.shots)},
                    {"synthetic", opt.synthetic ? "true" : "false"},
                    {"t_max_ns", format_double(opt.t_max_ns)}};
  manifest.seed = opt.seed;
  if (!cal_path.empty()) manifest.inputs[cal_path] = fnv1a64_hex(cal_path);
  manifest.wall_time_s = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start).count();
  write_manifest(dir, manifest);

  if (!fit.converged)
    throw FitFailure("in-plane fit did not converge (residual_rms " +
                     format_double(fit.residual_rms) + ")");
  if (!zi.converged)
    throw FitFailure("Ramsey fit did not converge (phase residual " +
                     format_double(zi.phase_residual_rms) + " rad)");
}

}  // namespace

void register_tomo(CLI::App& app) {
  auto opt = std::make_shared<TomoOptions>();
  CLI::App* sub = app.add_subcommand(
      "tomo", "Simulate the pair-characterization experiment and fit its coefficients");
  auto* cal = sub->add_option("--calibration", opt->calibration,
                              "Calibration JSON supplying the drive coefficients");
  auto* syn = sub->add_flag("--synthetic", opt->synthetic,
                            "Use the bundled device-average coefficients");
  cal->excludes(syn);
  syn->excludes(cal);
  sub->add_option("--durations", opt->durations, "Grid points over [0, t-max]")
      ->capture_default_str();
  sub->add_option("--t-max", opt->t_max_ns, "Longest evolution time (ns)")
      ->capture_default_str();
  sub->add_option("--shots", opt->shots, "Shots per expectation point (0 = exact)")
      ->capture_default_str();
  sub->add_option("--seed", opt->seed, "Base RNG seed")->capture_default_str();
  sub->add_option("--out", opt->out, "Output directory")->capture_default_str();
  sub->callback([opt] { run_tomo(*opt); });
}

}  // namespace crsim::cli
