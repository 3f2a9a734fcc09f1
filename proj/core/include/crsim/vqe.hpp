#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "crsim/pauli_sum.hpp"
#include "crsim/pqc.hpp"

namespace crsim {

// Simultaneous-perturbation gains: a_k = a / (k + 1 + A)^alpha and
// c_k = c / (k + 1)^gamma, k counted from 0.  a <= 0 calibrates the step so
// the first update moves each parameter by about first_step_rad.
struct SPSAConfig {
  int max_iterations = 100;
  double a = -1.0;  // <= 0: auto-calibrate from the first gradient estimate
  double c = 0.1;
  double alpha = 0.602;
  double gamma = 0.101;
  double stability = -1.0;  // A; <= 0 selects 0.1 * max_iterations
  double first_step_rad = 0.1;
  std::uint64_t seed = 0;
};

struct EvalRecord {
  int eval_index = 0;
  std::vector<double> params;
  double value = 0.0;
};

// Complete optimization record.  The loop spends exactly two objective
// evaluations per iteration; one extra evaluation of the final iterate is
// appended after the loop, so there are 2 * max_iterations + 1 records.
struct VQETrace {
  std::vector<EvalRecord> evaluations;
  std::vector<double> best_params;
  double best_value = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

VQETrace spsa_minimize(const Objective& objective, std::span<const double> initial,
                       const SPSAConfig& config);

struct VQEResult {
  VQETrace trace;
  StateVector state;  // prepared at trace.best_params
};

// Minimizes <H> over the circuit parameters with SPSA.  shots = 0 evaluates
// expectations exactly; otherwise every Pauli term is estimated from that
// many basis-rotated measurement shots per evaluation.  Initial parameters
// are uniform on [0, 2pi), drawn from config.seed.
VQEResult vqe_run(const Pqc& pqc, const PauliSum& hamiltonian, const SPSAConfig& config,
                  int shots = 0);

struct MaxCutEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

struct MaxCutProblem {
  int n_nodes = 0;
  std::vector<MaxCutEdge> edges;
};

void validate(const MaxCutProblem& graph);

// Node u maps to qubit u.  H = sum_(u,v,w) w/2 (Z_u Z_v - I), so that
// <z|H|z> = -cut(z) and minimizing <H> maximizes the cut.
PauliSum maxcut_hamiltonian(const MaxCutProblem& graph);

double cut_value(const MaxCutProblem& graph, std::string_view bitstring);

struct MaxCutSolution {
  double max_cut = 0.0;
  std::vector<std::string> optimal_bitstrings;  // lexicographic order
};

// Exhaustive reference; refuses n_nodes > 20.
MaxCutSolution brute_force_maxcut(const MaxCutProblem& graph);

struct RankedBitstring {
  std::string bitstring;
  double probability = 0.0;
};

// Top-k basis states by probability; exact ties break lexicographically.
std::vector<RankedBitstring> rank_solutions(const StateVector& state, int k);

// 1-based rank of the first optimal bitstring in the ranking, 0 if absent.
int rank_of_correct_answer(std::span<const RankedBitstring> ranking,
                           const std::set<std::string>& optimal);

struct SolutionRanking {
  std::vector<RankedBitstring> top_k;
  int correct_count = 0;  // optimal bitstrings inside the top k
  int roca = 0;
};

SolutionRanking evaluate_ranking(const StateVector& state, int k,
                                 const std::set<std::string>& optimal);

// Graph file: one "u v weight" edge per line, '#' comments, nodes 0-based;
// node count is one past the largest endpoint.  Duplicate edges (in either
// orientation), self-loops and non-positive weights are rejected with line
// numbers.
MaxCutProblem load_graph(const std::filesystem::path& path);

// Molecular benchmark input: the shared Pauli-sum text format.
PauliSum load_hamiltonian(const std::filesystem::path& path);

}  // namespace crsim
