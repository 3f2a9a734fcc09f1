#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crsim/cr_model.hpp"
#include "crsim/state_vector.hpp"

namespace crsim {

enum class RotationSet { Ry, RyRz };

// Layered hardware-efficient ansatz: each layer applies the rotation set to
// every qubit (RY first, then RZ when present), then the entangler along the
// entanglement map in order; a trailing rotation layer closes the circuit.
//
// Parameters are consumed layer by layer: within a layer, all RY angles for
// qubits 0..n-1, then all RZ angles; the trailing layer follows the same
// order.  parameter_count = n * layers * rotations_per_qubit + n * rotations_per_qubit.
struct PQCSpec {
  int n_qubits = 2;
  int n_layers = 1;
  RotationSet rotations = RotationSet::Ry;
  Entangler entangler = Entangler::cnot();
  std::vector<std::pair<int, int>> entanglement_map;  // (control, target) pairs
};

// Linear-map spec: entanglers on (i, i+1) for i = 0..n-2.
PQCSpec build_pqc(int n_qubits, int n_layers, RotationSet rotations, Entangler entangler);

int rotations_per_qubit(RotationSet r);
int parameter_count(const PQCSpec& spec);
void validate(const PQCSpec& spec);

// A PQCSpec compiled for repeated execution: entangler unitaries are resolved
// once per map pair (per-pair coefficients when a calibration table is given,
// the entangler's shared coefficients otherwise).
class Pqc {
 public:
  explicit Pqc(PQCSpec spec, const CalibrationTable* calibration = nullptr);

  const PQCSpec& spec() const { return spec_; }
  int parameter_count() const { return parameter_count_; }

  StateVector prepare(std::span<const double> params) const;

 private:
  PQCSpec spec_;
  int parameter_count_ = 0;
  std::vector<Eigen::Matrix4cd> pair_unitaries_;
};

StateVector prepare_state(const PQCSpec& spec, std::span<const double> params);

enum class Scheduling { SerialLayers };

// Wall-clock cost model of one circuit execution: rotations of a layer fire
// together per slot, entanglers run serially along the map.
struct DurationModel {
  double single_qubit_ns = 35.0;
  double entangler_ns_per_pair = 390.0;
  Scheduling scheduling = Scheduling::SerialLayers;
};

// duration = layers * (slots * single + |map| * entangler) + trailing slots.
double estimate_duration(const PQCSpec& spec, const DurationModel& model);

// Duration model for a spec under one calibration record: the entangler cost
// is the CNOT schedule for digital entanglers and the pulse length itself for
// cross-resonance ones.
DurationModel duration_model_for(const PQCSpec& spec, const CalibrationRecord& record);

// JSON round trip for specs ({n, layers, rotations, entangler, calibration});
// the calibration path is carried verbatim for the consumer to resolve.
std::string pqc_spec_to_json(const PQCSpec& spec, const std::string& calibration_path = "");
std::pair<PQCSpec, std::string> pqc_spec_from_json(const std::string& text);

}  // namespace crsim
