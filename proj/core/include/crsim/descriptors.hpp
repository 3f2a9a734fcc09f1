#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crsim/pqc.hpp"

namespace crsim {

// Probability that the fidelity of two Haar-random states of dimension `dim`
// lands in [f_lo, f_hi]: (1 - f_lo)^(d-1) - (1 - f_hi)^(d-1).
double haar_bin_probability(int dim, double f_lo, double f_hi);

// KL divergence (nats) of the empirical histogram of `fidelities` over
// n_bins equal-width bins on [0, 1] against the analytic Haar distribution.
double kl_divergence_vs_haar(std::span<const double> fidelities, int dim, int n_bins);

struct ExpressibilityResult {
  double expr_nats = 0.0;
  int n_samples = 0;
  int n_bins = 0;
  std::uint64_t seed = 0;
};

// Expressibility descriptor: KL(P_pqc(F) || P_haar(F)) estimated from
// n_samples parameter pairs drawn uniformly on [0, 2pi).  Lower is more
// expressive; 0 means Haar-indistinguishable at this resolution.  Requires
// n_samples >= 1000 and n_bins >= 10 to keep the histogram honest.
ExpressibilityResult expressibility(const Pqc& pqc, int n_samples = 5000, int n_bins = 75,
                                    std::uint64_t seed = 0, int n_threads = 1);

struct EntropyScanPoint {
  int n_layers = 0;
  double mean_entropy_bits = 0.0;
};

// Mean bipartite entanglement entropy over n_samples uniform parameter draws
// for each layer count in [layer_lo, layer_hi].  The kept block is the first
// split_size qubits; split_size <= 0 selects the (n-1)/2 default.  Requires
// n_qubits >= 3 (use partial_trace directly for two-qubit states).
std::vector<EntropyScanPoint> entropy_scan(const PQCSpec& family, int layer_lo, int layer_hi,
                                           int n_samples, int split_size = 0,
                                           std::uint64_t seed = 0, int n_threads = 1,
                                           const CalibrationTable* calibration = nullptr);

// Cost landscapes for the standard state-preparation benchmark: drive the
// circuit toward |0...0>.
//
// cost_global = 1 - p(|0...0>); cost_local = 1 - p(first n_c qubits all |0>).
double cost_global(const StateVector& state);
double cost_local(const StateVector& state, int n_c);

struct CostKind {
  enum class Type { Global, Local };
  Type type = Type::Global;
  int n_c = 0;  // local cost width; ignored for Global

  static CostKind global() { return {Type::Global, 0}; }
  static CostKind local(int n_c) { return {Type::Local, n_c}; }
  std::string label() const;
};

double evaluate_cost(const StateVector& state, const CostKind& kind);

// Exact partial derivative of the cost with respect to parameter `index` via
// the parameter-shift rule: [C(theta + pi/2 e_i) - C(theta - pi/2 e_i)] / 2.
// Valid because every parameterized gate is exp(-i theta P / 2).
double partial_derivative(const Pqc& pqc, std::span<const double> params, int index,
                          const CostKind& kind);

enum class DepthRule { Shallow, Deep };  // ceil(log2 n) vs 10 * n layers

struct VarianceScanRow {
  std::string entangler;  // label
  int n_qubits = 0;
  int n_layers = 0;
  std::string cost;  // label
  double variance = 0.0;
  int n_samples = 0;
};

// Sample variance of the first qubit-0 rotation parameter's gradient over
// n_samples uniform parameter draws, for each entangler kind and qubit count.
std::vector<VarianceScanRow> variance_scan(std::span<const Entangler> kinds, int n_lo,
                                           int n_hi, DepthRule depth, const CostKind& cost,
                                           int n_samples, std::uint64_t seed = 0,
                                           RotationSet rotations = RotationSet::Ry,
                                           int n_threads = 1);

}  // namespace crsim
