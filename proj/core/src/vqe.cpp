#include "crsim/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "crsim/rng.hpp"
#include "crsim/sampling.hpp"
#include "crsim/text_format.hpp"

namespace crsim {

namespace {

constexpr int kBruteForceNodeLimit = 20;

void validate(const SPSAConfig& config) {
  if (config.max_iterations < 1)
    throw std::invalid_argument("SPSAConfig: max_iterations must be >= 1");
  if (!(config.c > 0.0)) throw std::invalid_argument("SPSAConfig: c must be positive");
  if (!(config.alpha > 0.0) || !(config.gamma > 0.0))
    throw std::invalid_argument("SPSAConfig: gain exponents must be positive");
}

}  // namespace

VQETrace spsa_minimize(const Objective& objective, std::span<const double> initial,
                       const SPSAConfig& config) {
  validate(config);
  if (initial.empty()) throw std::invalid_argument("spsa_minimize: empty parameter vector");

  const int p_count = static_cast<int>(initial.size());
  const double stability =
      config.stability > 0.0 ? config.stability : 0.1 * config.max_iterations;

  VQETrace trace;
  trace.evaluations.reserve(2 * config.max_iterations + 1);
  trace.best_value = std::numeric_limits<double>::infinity();

  auto record = [&](std::span<const double> params, double value) {
    EvalRecord rec;
    rec.eval_index = static_cast<int>(trace.evaluations.size());
    rec.params.assign(params.begin(), params.end());
    rec.value = value;
    if (value < trace.best_value) {
      trace.best_value = value;
      trace.best_params = rec.params;
    }
    trace.evaluations.push_back(std::move(rec));
  };

  std::vector<double> theta(initial.begin(), initial.end());
  std::vector<double> perturbed(p_count);
  std::vector<int> delta(p_count);
  RandomStream rng(derive_seed(config.seed, 0x73707361ULL, 0));

  double gain_a = config.a;
  bool calibrated = config.a > 0.0;

  for (int k = 0; k < config.max_iterations; ++k) {
    const double c_k = config.c / std::pow(k + 1.0, config.gamma);
    for (int i = 0; i < p_count; ++i) delta[i] = rng.sign();

    for (int i = 0; i < p_count; ++i) perturbed[i] = theta[i] + c_k * delta[i];
    const double f_plus = objective(perturbed);
    record(perturbed, f_plus);

    for (int i = 0; i < p_count; ++i) perturbed[i] = theta[i] - c_k * delta[i];
    const double f_minus = objective(perturbed);
    record(perturbed, f_minus);

    const double diff = f_plus - f_minus;
    if (!calibrated && std::abs(diff) > 1e-15) {
      // All SPSA gradient components share the magnitude |diff| / (2 c_k), so
      // choosing a this way makes the upcoming step move every coordinate by
      // about first_step_rad radians.
      gain_a = config.first_step_rad * std::pow(k + 1.0 + stability, config.alpha) /
               (std::abs(diff) / (2.0 * c_k));
      calibrated = true;
    }
    if (!calibrated) continue;  // flat so far: nothing to scale against, hold position

    const double a_k = gain_a / std::pow(k + 1.0 + stability, config.alpha);
    for (int i = 0; i < p_count; ++i) {
      const double g_i = diff / (2.0 * c_k * delta[i]);
      theta[i] -= a_k * g_i;
    }
  }

  // One closing evaluation of the unperturbed iterate, so the trace ends on
  // the point the optimizer actually settled at.
  record(theta, objective(theta));
  return trace;
}

namespace {

double sampled_energy(const StateVector& state, const PauliSum& h, int shots,
                      std::uint64_t seed, std::uint64_t eval_index) {
  double energy = 0.0;
  int term_index = 0;
  for (const auto& term : h.terms()) {
    const bool identity =
        term.paulis.find_first_not_of('I') == std::string::npos;
    if (identity) {
      energy += term.coefficient;
      ++term_index;
      continue;
    }
    const auto counts = sample_counts(state, term.paulis, shots,
                                      derive_seed(seed, 0x766d6561ULL, eval_index, term_index));
    std::uint64_t support = 0;
    const int n = state.n_qubits();
    for (int q = 0; q < n; ++q)
      if (term.paulis[q] != 'I') support |= std::uint64_t{1} << (n - 1 - q);
    long long parity_sum = 0;
    for (const auto& [bits, count] : counts) {
      const auto index = static_cast<std::uint64_t>(index_of_bitstring(bits));
      parity_sum += (std::popcount(index & support) & 1) ? -count : count;
    }
    energy += term.coefficient * static_cast<double>(parity_sum) / shots;
    ++term_index;
  }
  return energy;
}

}  // namespace

VQEResult vqe_run(const Pqc& pqc, const PauliSum& hamiltonian, const SPSAConfig& config,
                  int shots) {
  if (hamiltonian.n_qubits() != pqc.spec().n_qubits)
    throw std::invalid_argument("vqe_run: Hamiltonian and circuit qubit counts differ");
  if (shots < 0) throw std::invalid_argument("vqe_run: shots must be >= 0");

  RandomStream init_rng(derive_seed(config.seed, 0x696e6974ULL, 0));
  std::vector<double> initial(pqc.parameter_count());
  for (double& p : initial) p = init_rng.angle();

  std::uint64_t eval_counter = 0;
  Objective objective = [&](std::span<const double> params) {
    const StateVector state = pqc.prepare(params);
    const std::uint64_t index = eval_counter++;
    return shots > 0 ? sampled_energy(state, hamiltonian, shots, config.seed, index)
                     : expectation(state, hamiltonian);
  };

  VQETrace trace = spsa_minimize(objective, initial, config);
  StateVector state = pqc.prepare(trace.best_params);
  return {std::move(trace), std::move(state)};
}

void validate(const MaxCutProblem& graph) {
  if (graph.n_nodes < 0) throw std::invalid_argument("MaxCutProblem: negative node count");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : graph.edges) {
    if (e.u < 0 || e.u >= graph.n_nodes || e.v < 0 || e.v >= graph.n_nodes)
      throw std::invalid_argument("MaxCutProblem: edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("MaxCutProblem: self-loops are not allowed");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("MaxCutProblem: edge weights must be positive and finite");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
      throw std::invalid_argument("MaxCutProblem: duplicate edge");
  }
}

PauliSum maxcut_hamiltonian(const MaxCutProblem& graph) {
  validate(graph);
  if (graph.n_nodes < 1)
    throw std::invalid_argument("maxcut_hamiltonian: graph has no nodes");
  std::vector<PauliTerm> terms;
  double constant = 0.0;
  for (const auto& e : graph.edges) {
    std::string paulis(graph.n_nodes, 'I');
    paulis[e.u] = 'Z';
    paulis[e.v] = 'Z';
    terms.push_back({e.weight / 2.0, std::move(paulis)});
    constant -= e.weight / 2.0;
  }
  terms.push_back({constant, std::string(graph.n_nodes, 'I')});
  return PauliSum(std::move(terms));
}

double cut_value(const MaxCutProblem& graph, std::string_view bitstring) {
  if (static_cast<int>(bitstring.size()) != graph.n_nodes)
    throw std::invalid_argument("cut_value: bitstring length differs from node count");
  double cut = 0.0;
  for (const auto& e : graph.edges)
    if (bitstring[e.u] != bitstring[e.v]) cut += e.weight;
  return cut;
}

MaxCutSolution brute_force_maxcut(const MaxCutProblem& graph) {
  validate(graph);
  if (graph.n_nodes > kBruteForceNodeLimit)
    throw std::invalid_argument("brute_force_maxcut: exhaustive search is limited to " +
                                std::to_string(kBruteForceNodeLimit) + " nodes");
  MaxCutSolution solution;
  const std::int64_t count = std::int64_t{1} << graph.n_nodes;
  for (std::int64_t z = 0; z < count; ++z) {
    const std::string bits = bitstring_of_index(z, graph.n_nodes);
    const double cut = cut_value(graph, bits);
    if (cut > solution.max_cut + 1e-12) {
      solution.max_cut = cut;
      solution.optimal_bitstrings.clear();
    }
    if (std::abs(cut - solution.max_cut) <= 1e-12) solution.optimal_bitstrings.push_back(bits);
  }
  return solution;
}

std::vector<RankedBitstring> rank_solutions(const StateVector& state, int k) {
  if (k < 1) throw std::invalid_argument("rank_solutions: k must be >= 1");
  const std::int64_t d = state.dim();
  std::vector<std::int64_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> probs(d);
  for (std::int64_t b = 0; b < d; ++b) probs[b] = state.probability(b);
  // Ties break toward the smaller index, which is exactly lexicographic order
  // on the fixed-width bitstrings.
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t lhs, std::int64_t rhs) {
    if (probs[lhs] != probs[rhs]) return probs[lhs] > probs[rhs];
    return lhs < rhs;
  });
  const std::int64_t take = std::min<std::int64_t>(k, d);
  std::vector<RankedBitstring> ranking;
  ranking.reserve(take);
  for (std::int64_t i = 0; i < take; ++i)
    ranking.push_back({bitstring_of_index(order[i], state.n_qubits()), probs[order[i]]});
  return ranking;
}

int rank_of_correct_answer(std::span<const RankedBitstring> ranking,
                           const std::set<std::string>& optimal) {
  for (std::size_t i = 0; i < ranking.size(); ++i)
    if (optimal.count(ranking[i].bitstring)) return static_cast<int>(i) + 1;
  return 0;
}

SolutionRanking evaluate_ranking(const StateVector& state, int k,
                                 const std::set<std::string>& optimal) {
  SolutionRanking result;
  result.top_k = rank_solutions(state, k);
  for (const auto& entry : result.top_k)
    if (optimal.count(entry.bitstring)) ++result.correct_count;
  result.roca = rank_of_correct_answer(result.top_k, optimal);
  return result;
}

MaxCutProblem load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path.string());
  const std::string source = path.filename().string();

  MaxCutProblem graph;
  std::set<std::pair<int, int>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string u_tok, v_tok, w_tok, extra;
    if (!(fields >> u_tok)) continue;
    if (!(fields >> v_tok >> w_tok))
      throw ParseError(source, line_no, "expected 'u v weight'");
    if (fields >> extra)
      throw ParseError(source, line_no, "unexpected trailing field '" + extra + "'");
    const std::string where = source + ":" + std::to_string(line_no);
    // Surface unparseable tokens as ParseError so callers see one failure type.
    const auto parse_node = [&](const std::string& tok) {
      try {
        return parse_integer(tok, where);
      } catch (const std::invalid_argument&) {
        throw ParseError(source, line_no, "invalid node id '" + tok + "'");
      }
    };
    const long long u = parse_node(u_tok);
    const long long v = parse_node(v_tok);
    double w = 0.0;
    try {
      w = parse_double(w_tok, where);
    } catch (const std::invalid_argument&) {
      throw ParseError(source, line_no, "invalid edge weight '" + w_tok + "'");
    }
    if (u < 0 || v < 0) throw ParseError(source, line_no, "node ids must be >= 0");
    if (u == v) throw ParseError(source, line_no, "self-loops are not allowed");
    if (!(w > 0.0) || !std::isfinite(w))
      throw ParseError(source, line_no, "edge weights must be positive");
    const int lo = static_cast<int>(std::min(u, v));
    const int hi = static_cast<int>(std::max(u, v));
    if (!seen.emplace(lo, hi).second)
      throw ParseError(source, line_no, "duplicate edge " + u_tok + "-" + v_tok);
    graph.edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    graph.n_nodes = std::max({graph.n_nodes, static_cast<int>(u) + 1, static_cast<int>(v) + 1});
  }
  validate(graph);
  return graph;
}

PauliSum load_hamiltonian(const std::filesystem::path& path) { return PauliSum::load(path); }

}  // namespace crsim
