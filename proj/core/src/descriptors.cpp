#include "crsim/descriptors.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crsim/density.hpp"
#include "crsim/rng.hpp"
#include "parallel.hpp"

namespace crsim {

namespace {

std::vector<double> draw_params(RandomStream& rng, int count) {
  std::vector<double> params(count);
  for (double& p : params) p = rng.angle();
  return params;
}

int shallow_layers(int n) {
  int layers = 0;
  while ((1 << layers) < n) ++layers;  // ceil(log2 n)
  return std::max(layers, 1);
}

}  // namespace

double haar_bin_probability(int dim, double f_lo, double f_hi) {
  if (dim < 2) throw std::invalid_argument("haar_bin_probability: dim must be >= 2");
  if (!(f_lo >= 0.0) || !(f_hi <= 1.0) || !(f_lo < f_hi))
    throw std::invalid_argument("haar_bin_probability: need 0 <= f_lo < f_hi <= 1");
  const double d = static_cast<double>(dim);
  return std::pow(1.0 - f_lo, d - 1.0) - std::pow(1.0 - f_hi, d - 1.0);
}

double kl_divergence_vs_haar(std::span<const double> fidelities, int dim, int n_bins) {
  if (n_bins < 1) throw std::invalid_argument("kl_divergence_vs_haar: n_bins must be >= 1");
  if (fidelities.empty())
    throw std::invalid_argument("kl_divergence_vs_haar: no fidelity samples");
  std::vector<std::int64_t> counts(n_bins, 0);
  for (double f : fidelities) {
    if (!(f >= -1e-12) || !(f <= 1.0 + 1e-12))
      throw std::invalid_argument("kl_divergence_vs_haar: fidelities live in [0, 1]");
    const int bin = std::min(static_cast<int>(std::clamp(f, 0.0, 1.0) * n_bins), n_bins - 1);
    ++counts[bin];
  }
  const double total = static_cast<double>(fidelities.size());
  double kl = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    if (counts[b] == 0) continue;
    const double p = counts[b] / total;
    const double q = haar_bin_probability(dim, static_cast<double>(b) / n_bins,
                                          b + 1 == n_bins ? 1.0 : static_cast<double>(b + 1) / n_bins);
    kl += p * std::log(p / q);
  }
  return kl;
}

ExpressibilityResult expressibility(const Pqc& pqc, int n_samples, int n_bins,
                                    std::uint64_t seed, int n_threads) {
  if (n_samples < 1000)
    throw std::invalid_argument("expressibility: fewer than 1000 samples undersamples the histogram");
  if (n_bins < 10)
    throw std::invalid_argument("expressibility: fewer than 10 bins undersamples the histogram");

  const int p_count = pqc.parameter_count();
  std::vector<double> fidelities(n_samples);
  parallel_for(n_samples, n_threads, [&](std::int64_t k) {
    // Stream per sample pair: bit-identical results under any schedule.
    RandomStream rng(derive_seed(seed, 0x65787072ULL, static_cast<std::uint64_t>(k)));
    const std::vector<double> theta1 = draw_params(rng, p_count);
    const std::vector<double> theta2 = draw_params(rng, p_count);
    const StateVector s1 = pqc.prepare(theta1);
    const StateVector s2 = pqc.prepare(theta2);
    fidelities[k] = s1.fidelity(s2);
  });

  ExpressibilityResult result;
  result.expr_nats = kl_divergence_vs_haar(fidelities, 1 << pqc.spec().n_qubits, n_bins);
  result.n_samples = n_samples;
  result.n_bins = n_bins;
  result.seed = seed;
  return result;
}

std::vector<EntropyScanPoint> entropy_scan(const PQCSpec& family, int layer_lo, int layer_hi,
                                           int n_samples, int split_size, std::uint64_t seed,
                                           int n_threads, const CalibrationTable* calibration) {
  if (family.n_qubits < 3)
    throw std::invalid_argument("entropy_scan: scans need at least 3 qubits");
  if (layer_lo < 1 || layer_hi < layer_lo)
    throw std::invalid_argument("entropy_scan: invalid layer range");
  if (n_samples < 1) throw std::invalid_argument("entropy_scan: n_samples must be >= 1");
  if (split_size <= 0) split_size = (family.n_qubits - 1) / 2;
  if (split_size >= family.n_qubits)
    throw std::invalid_argument("entropy_scan: split must leave both sides nonempty");

  std::vector<int> keep(split_size);
  for (int q = 0; q < split_size; ++q) keep[q] = q;

  std::vector<EntropyScanPoint> points;
  for (int layers = layer_lo; layers <= layer_hi; ++layers) {
    PQCSpec spec = family;
    spec.n_layers = layers;
    const Pqc pqc(spec, calibration);
    std::vector<double> entropies(n_samples);
    parallel_for(n_samples, n_threads, [&](std::int64_t k) {
      RandomStream rng(derive_seed(seed, 0x656e7472ULL, layers, static_cast<std::uint64_t>(k)));
      const std::vector<double> theta = draw_params(rng, pqc.parameter_count());
      const StateVector state = pqc.prepare(theta);
      entropies[k] = von_neumann_entropy(partial_trace(state, keep));
    });
    double mean = 0.0;
    for (double e : entropies) mean += e;  // fixed order, independent of threads
    points.push_back({layers, mean / n_samples});
  }
  return points;
}

double cost_global(const StateVector& state) { return 1.0 - state.probability(0); }

double cost_local(const StateVector& state, int n_c) {
  const int n = state.n_qubits();
  if (n_c < 1 || n_c > n)
    throw std::invalid_argument("cost_local: n_c must lie in [1, n_qubits]");
  // Qubit 0 is the index MSB, so "first n_c qubits all zero" is the
  // contiguous index block [0, 2^(n - n_c)).
  const std::int64_t block = std::int64_t{1} << (n - n_c);
  double p = 0.0;
  for (std::int64_t b = 0; b < block; ++b) p += state.probability(b);
  return 1.0 - p;
}

std::string CostKind::label() const {
  return type == Type::Global ? "global" : "local" + std::to_string(n_c);
}

double evaluate_cost(const StateVector& state, const CostKind& kind) {
  return kind.type == CostKind::Type::Global ? cost_global(state)
                                             : cost_local(state, kind.n_c);
}

double partial_derivative(const Pqc& pqc, std::span<const double> params, int index,
                          const CostKind& kind) {
  if (index < 0 || index >= pqc.parameter_count())
    throw std::invalid_argument("partial_derivative: parameter index out of range");
  std::vector<double> shifted(params.begin(), params.end());
  constexpr double kShift = 1.5707963267948966;  // pi/2
  shifted[index] = params[index] + kShift;
  const double plus = evaluate_cost(pqc.prepare(shifted), kind);
  shifted[index] = params[index] - kShift;
  const double minus = evaluate_cost(pqc.prepare(shifted), kind);
  return (plus - minus) / 2.0;
}

std::vector<VarianceScanRow> variance_scan(std::span<const Entangler> kinds, int n_lo,
                                           int n_hi, DepthRule depth, const CostKind& cost,
                                           int n_samples, std::uint64_t seed,
                                           RotationSet rotations, int n_threads) {
  if (kinds.empty()) throw std::invalid_argument("variance_scan: no entangler kinds");
  if (n_lo < 2 || n_hi < n_lo)
    throw std::invalid_argument("variance_scan: invalid qubit range");
  if (n_samples < 2) throw std::invalid_argument("variance_scan: need at least 2 samples");

  std::vector<VarianceScanRow> rows;
  for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
    for (int n = n_lo; n <= n_hi; ++n) {
      const int layers = depth == DepthRule::Shallow ? shallow_layers(n) : 10 * n;
      const Pqc pqc(build_pqc(n, layers, rotations, kinds[ki]));
      std::vector<double> grads(n_samples);
      parallel_for(n_samples, n_threads, [&](std::int64_t k) {
        RandomStream rng(derive_seed(seed, 0x76617273ULL + ki, n,
                                     static_cast<std::uint64_t>(k)));
        const std::vector<double> theta = draw_params(rng, pqc.parameter_count());
        // Index 0 is the first rotation parameter acting on qubit 0.
        grads[k] = partial_derivative(pqc, theta, 0, cost);
      });
      double mean = 0.0;
      for (double g : grads) mean += g;
      mean /= n_samples;
      double var = 0.0;
      for (double g : grads) var += (g - mean) * (g - mean);
      var /= (n_samples - 1);
      rows.push_back({kinds[ki].label(), n, layers, cost.label(), var, n_samples});
    }
  }
  return rows;
}

}  // namespace crsim
