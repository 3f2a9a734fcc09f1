#include <chrono>
#include <fstream>
#include <memory>

#include "CLI11.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "crsim/descriptors.hpp"
#include "crsim/text_format.hpp"
#include "manifest.hpp"

namespace crsim::cli {

namespace {

std::ofstream open_csv(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + name + " in " + dir.string());
  return out;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct ExprOptions {
  int qubits = 4;
  std::string layers = "1..6";
  std::string entangler = "cnot";
  std::string rotations = "ry";
  int samples = 5000;
  int bins = 75;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string calibration;
  std::string out = "expr_out";
};

void run_expr(const ExprOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto [table, cal_path] = resolve_calibration(opt.calibration);
  const LayerRange range = parse_range(opt.layers);
  const Entangler ent = make_entangler(opt.entangler, table.defaults().coeffs);
  const RotationSet rotations = parse_rotations(opt.rotations);

  auto csv = open_csv(opt.out, "expr.csv");
  csv << "n_qubits,n_layers,entangler,rotations,samples,bins,expr_nats\n";
  for (int layers = range.lo; layers <= range.hi; ++layers) {
    const Pqc pqc(build_pqc(opt.qubits, layers, rotations, ent), &table);
    const ExpressibilityResult res =
        expressibility(pqc, opt.samples, opt.bins, opt.seed, opt.threads);
    csv << opt.qubits << ',' << layers << ',' << ent.label() << ',' << opt.rotations << ','
        << res.n_samples << ',' << res.n_bins << ',' << format_double(res.expr_nats)
        << '\n';
  }
  csv.close();

  RunManifest manifest;
  manifest.command = "expr";
  manifest.flags = {{"bins", std::to_string(opt.bins)},
                    {"calibration", cal_path},
                    {"entangler", opt.entangler},
                    {"layers", opt.layers},
                    {"out", opt.out},
                    {"qubits", std::to_string(opt.qubits)},
                    {"rotations", opt.rotations},
                    {"samples", std::to_string(opt.samples)},
                    {"seed", std::to_string(opt.seed)},
                    {"threads", std::to_string(opt.threads)}};
  manifest.seed = opt.seed;
  if (!cal_path.empty()) manifest.inputs[cal_path] = fnv1a64_hex(cal_path);
  manifest.wall_time_s = elapsed_s(start);
  write_manifest(opt.out, manifest);
}

struct EntropyOptions {
  int qubits = 9;
  std::string layers = "1..8";
  std::string entangler = "cnot";
  int samples = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string calibration;
  std::string out = "entropy_out";
};

void run_entropy(const EntropyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto [table, cal_path] = resolve_calibration(opt.calibration);
  const LayerRange range = parse_range(opt.layers);
  const Entangler ent = make_entangler(opt.entangler, table.defaults().coeffs);
  const PQCSpec family = build_pqc(opt.qubits, 1, RotationSet::Ry, ent);

  const auto points = entropy_scan(family, range.lo, range.hi, opt.samples, 0, opt.seed,
                                   opt.threads, &table);
  const int split = (opt.qubits - 1) / 2;

  auto csv = open_csv(opt.out, "entropy.csv");
  csv << "n_qubits,n_layers,entangler,split_size,samples,mean_entropy_bits\n";
  for (const auto& point : points)
    csv << opt.qubits << ',' << point.n_layers << ',' << ent.label() << ',' << split << ','
        << opt.samples << ',' << format_double(point.mean_entropy_bits) << '\n';
  csv.close();

  RunManifest manifest;
  manifest.command = "entropy";
  manifest.flags = {{"calibration", cal_path},
                    {"entangler", opt.entangler},
                    {"layers", opt.layers},
                    {"out", opt.out},
                    {"qubits", std::to_string(opt.qubits)},
                    {"samples", std::to_string(opt.samples)},
                    {"seed", std::to_string(opt.seed)},
                    {"threads", std::to_string(opt.threads)}};
  manifest.seed = opt.seed;
  if (!cal_path.empty()) manifest.inputs[cal_path] = fnv1a64_hex(cal_path);
  manifest.wall_time_s = elapsed_s(start);
  write_manifest(opt.out, manifest);
}

struct VarianceOptions {
  std::string qubits = "2..8";
  std::vector<std::string> entanglers{"cnot"};
  std::string depth = "deep";
  std::string cost = "global";
  int samples = 200;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string calibration;
  std::string out = "variance_out";
};

void run_variance(const VarianceOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto [table, cal_path] = resolve_calibration(opt.calibration);
  const LayerRange range = parse_range(opt.qubits);

  DepthRule depth;
  if (opt.depth == "shallow") {
    depth = DepthRule::Shallow;
  } else if (opt.depth == "deep") {
    depth = DepthRule::Deep;
  } else {
    throw std::invalid_argument("unknown depth '" + opt.depth +
                                "' (expected shallow or deep)");
  }
  const CostKind cost = parse_cost(opt.cost);

  std::vector<Entangler> kinds;
  for (const auto& name : opt.entanglers)
    kinds.push_back(make_entangler(name, table.defaults().coeffs));

  const auto rows = variance_scan(kinds, range.lo, range.hi, depth, cost, opt.samples,
                                  opt.seed, RotationSet::Ry, opt.threads);

  auto csv = open_csv(opt.out, "variance.csv");
  csv << "entangler,n_qubits,n_layers,cost,samples,variance\n";
  for (const auto& row : rows)
    csv << row.entangler << ',' << row.n_qubits << ',' << row.n_layers << ',' << row.cost
        << ',' << row.n_samples << ',' << format_double(row.variance) << '\n';
  csv.close();

  std::string entangler_list;
  for (const auto& name : opt.entanglers)
    entangler_list += (entangler_list.empty() ? "" : ",") + name;

  RunManifest manifest;
  manifest.command = "variance";
  manifest.flags = {{"calibration", cal_path},
                    {"cost", opt.cost},
                    {"depth", opt.depth},
                    {"entangler", entangler_list},
                    {"out", opt.out},
                    {"qubits", opt.qubits},
                    {"samples", std::to_string(opt.samples)},
                    {"seed", std::to_string(opt.seed)},
                    {"threads", std::to_string(opt.threads)}};
  manifest.seed = opt.seed;
  if (!cal_path.empty()) manifest.inputs[cal_path] = fnv1a64_hex(cal_path);
  manifest.wall_time_s = elapsed_s(start);
  write_manifest(opt.out, manifest);
}

}  // namespace

void register_expr(CLI::App& app) {
  auto opt = std::make_shared<ExprOptions>();
  CLI::App* sub = app.add_subcommand("expr", "Expressibility scan over circuit depths");
  sub->add_option("--qubits", opt->qubits, "Qubit count")->capture_default_str();
  sub->add_option("--layers,--layer-range", opt->layers, "Layer count or range lo..hi")
      ->capture_default_str();
  sub->add_option("--entangler", opt->entangler, "cnot | cr-ang | cr-dur")
      ->capture_default_str();
  sub->add_option("--rotations", opt->rotations, "ry | ryrz")->capture_default_str();
  sub->add_option("--samples", opt->samples, "Fidelity sample pairs per point")
      ->capture_default_str();
  sub->add_option("--bins", opt->bins, "Histogram bins on [0,1]")->capture_default_str();
  sub->add_option("--seed", opt->seed, "Base RNG seed")->capture_default_str();
  sub->add_option("--threads", opt->threads, "Worker threads")->capture_default_str();
  sub->add_option("--calibration", opt->calibration, "Calibration JSON");
  sub->add_option("--out", opt->out, "Output directory")->capture_default_str();
  sub->callback([opt] { run_expr(*opt); });
}

void register_entropy(CLI::App& app) {
  auto opt = std::make_shared<EntropyOptions>();
  CLI::App* sub = app.add_subcommand(
      "entropy", "Mean bipartite entanglement entropy scan over circuit depths");
  sub->add_option("--qubits", opt->qubits, "Qubit count (>= 3)")->capture_default_str();
  sub->add_option("--layers,--layer-range", opt->layers, "Layer count or range lo..hi")
      ->capture_default_str();
  sub->add_option("--entangler", opt->entangler, "cnot | cr-ang | cr-dur")
      ->capture_default_str();
  sub->add_option("--samples", opt->samples, "Parameter draws per point")
      ->capture_default_str();
  sub->add_option("--seed", opt->seed, "Base RNG seed")->capture_default_str();
  sub->add_option("--threads", opt->threads, "Worker threads")->capture_default_str();
  sub->add_option("--calibration", opt->calibration, "Calibration JSON");
  sub->add_option("--out", opt->out, "Output directory")->capture_default_str();
  sub->callback([opt] { run_entropy(*opt); });
}

void register_variance(CLI::App& app) {
  auto opt = std::make_shared<VarianceOptions>();
  CLI::App* sub = app.add_subcommand(
      "variance", "Gradient-variance scan over qubit counts (barren-plateau probe)");
  sub->add_option("--qubits", opt->qubits, "Qubit count or range lo..hi (>= 2)")
      ->capture_default_str();
  sub->add_option("--entangler", opt->entanglers,
                  "cnot | cr-ang | cr-dur (repeatable)")
      ->capture_default_str();
  sub->add_option("--depth", opt->depth, "shallow (ceil log2 n) | deep (10n)")
      ->capture_default_str();
  sub->add_option("--cost", opt->cost, "global | local:N")->capture_default_str();
  sub->add_option("--samples", opt->samples, "Gradient samples per point")
      ->capture_default_str();
  sub->add_option("--seed", opt->seed, "Base RNG seed")->capture_default_str();
  sub->add_option("--threads", opt->threads, "Worker threads")->capture_default_str();
  sub->add_option("--calibration", opt->calibration, "Calibration JSON");
  sub->add_option("--out", opt->out, "Output directory")->capture_default_str();
  sub->callback([opt] { run_variance(*opt); });
}

}  // namespace crsim::cli
