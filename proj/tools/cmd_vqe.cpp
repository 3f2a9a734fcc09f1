#include <chrono>
#include <fstream>
#include <memory>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "crsim/text_format.hpp"
#include "crsim/vqe.hpp"
#include "manifest.hpp"

namespace crsim::cli {

namespace {

struct VqeOptions {
  std::string problem = "maxcut";
  std::string graph;
  std::string ham;
  std::string entangler = "cnot";
  int layers = 5;
  std::string rotations = "ry";
  int iters = 100;
  int shots = 0;
  std::uint64_t seed = 0;
  int top_k = 5;
  std::string calibration;
  std::string out = "vqe_out";
};

void run_vqe(const VqeOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (opt.top_k < 1) throw std::invalid_argument("--top-k must be >= 1");
  const auto [table, cal_path] = resolve_calibration(opt.calibration);

  const bool is_maxcut = opt.problem == "maxcut";
  if (!is_maxcut && opt.problem != "hamiltonian")
    throw std::invalid_argument("unknown problem '" + opt.problem +
                                "' (expected maxcut or hamiltonian)");
  if (is_maxcut && opt.graph.empty())
    throw std::invalid_argument("--problem maxcut requires --graph");
  if (!is_maxcut && opt.ham.empty())
    throw std::invalid_argument("--problem hamiltonian requires --ham");

  MaxCutProblem graph;
  PauliSum hamiltonian({{0.0, "I"}});
  if (is_maxcut) {
    graph = load_graph(opt.graph);
    hamiltonian = maxcut_hamiltonian(graph);
  } else {
    hamiltonian = load_hamiltonian(opt.ham);
  }
  const int n_qubits = hamiltonian.n_qubits();

  const Entangler ent = make_entangler(opt.entangler, table.defaults().coeffs);
  const PQCSpec spec = build_pqc(n_qubits, opt.layers, parse_rotations(opt.rotations), ent);
  const Pqc pqc(spec, &table);

  SPSAConfig config;
  config.max_iterations = opt.iters;
  config.seed = opt.seed;
  const VQEResult result = vqe_run(pqc, hamiltonian, config, opt.shots);

  const std::filesystem::path dir(opt.out);
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "trace.csv");
    if (!csv) throw std::runtime_error("cannot write trace.csv in " + dir.string());
    csv << "eval,value\n";
    for (const auto& rec : result.trace.evaluations)
      csv << rec.eval_index << ',' << format_double(rec.value) << '\n';
  }

  nlohmann::json j;
  j["problem"] = opt.problem;
  j["n_qubits"] = n_qubits;
  j["best_value"] = result.trace.best_value;
  j["best_params"] = result.trace.best_params;
  j["evaluations"] = result.trace.evaluations.size();
  if (is_maxcut) {
    nlohmann::json top = nlohmann::json::array();
    if (graph.n_nodes <= 20) {
      const MaxCutSolution oracle = brute_force_maxcut(graph);
      const std::set<std::string> optimal(oracle.optimal_bitstrings.begin(),
                                          oracle.optimal_bitstrings.end());
      const SolutionRanking ranking = evaluate_ranking(result.state, opt.top_k, optimal);
      for (const auto& entry : ranking.top_k)
        top.push_back({{"bitstring", entry.bitstring}, {"probability", entry.probability}});
      j["exact_reference"] = -oracle.max_cut;
      j["max_cut"] = oracle.max_cut;
      j["optimal_bitstrings"] = oracle.optimal_bitstrings;
      j["roca"] = ranking.roca;
      j["correct_count"] = ranking.correct_count;
    } else {
      // Too large for the exhaustive reference; rank without scoring.
      for (const auto& entry : rank_solutions(result.state, opt.top_k))
        top.push_back({{"bitstring", entry.bitstring}, {"probability", entry.probability}});
    }
    j["top_k"] = std::move(top);
  } else if (n_qubits <= 12) {
    const double exact = exact_minimum_eigenvalue(hamiltonian).first;
    j["exact_reference"] = exact;
    j["abs_error"] = std::abs(result.trace.best_value - exact);
  }
  {
    std::ofstream out(dir / "summary.json");
    if (!out) throw std::runtime_error("cannot write summary.json in " + dir.string());
    out << j.dump(2) << "\n";
  }

  RunManifest manifest;
  manifest.command = "vqe";
  manifest.flags = {{"calibration", cal_path},
                    {"entangler", opt.entangler},
                    {"graph", opt.graph},
                    {"ham", opt.ham},
                    {"iters", std::to_string(opt.iters)},
                    {"layers", std::to_string(opt.layers)},
                    {"out", opt.out},
                    {"problem", opt.problem},
                    {"rotations", opt.rotations},
                    {"seed", std::to_string(opt.seed)},
                    {"shots", std::to_string(opt.shots)},
                    {"top_k", std::to_string(opt.top_k)}};
  manifest.seed = opt.seed;
  if (!cal_path.empty()) manifest.inputs[cal_path] = fnv1a64_hex(cal_path);
  if (!opt.graph.empty()) manifest.inputs[opt.graph] = fnv1a64_hex(opt.graph);
  if (!opt.ham.empty()) manifest.inputs[opt.ham] = fnv1a64_hex(opt.ham);
  manifest.wall_time_s = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start).count();
  write_manifest(dir, manifest);
}

}  // namespace

void register_vqe(CLI::App& app) {
  auto opt = std::make_shared<VqeOptions>();
  CLI::App* sub = app.add_subcommand(
      "vqe", "Variational eigensolver over a MaxCut graph or Hamiltonian file");
  sub->add_option("--problem", opt->problem, "maxcut | hamiltonian")->capture_default_str();
  sub->add_option("--graph", opt->graph, "Graph file (u v weight per line)");
  sub->add_option("--ham", opt->ham, "Pauli-sum Hamiltonian file");
  sub->add_option("--entangler", opt->entangler, "cnot | cr-ang | cr-dur")
      ->capture_default_str();
  sub->add_option("--layers", opt->layers, "Circuit layers")->capture_default_str();
  sub->add_option("--rotations", opt->rotations, "ry | ryrz")->capture_default_str();
  sub->add_option("--iters", opt->iters, "Optimizer iterations")->capture_default_str();
  sub->add_option("--shots", opt->shots, "Shots per Pauli term (0 = exact)")
      ->capture_default_str();
  sub->add_option("--seed", opt->seed, "Base RNG seed")->capture_default_str();
  sub->add_option("--top-k", opt->top_k, "Ranked bitstrings to report")
      ->capture_default_str();
  sub->add_option("--calibration", opt->calibration, "Calibration JSON");
  sub->add_option("--out", opt->out, "Output directory")->capture_default_str();
  sub->callback([opt] { run_vqe(*opt); });
}

}  // namespace crsim::cli
