#include "crsim/pqc.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace crsim {

PQCSpec build_pqc(int n_qubits, int n_layers, RotationSet rotations, Entangler entangler) {
  PQCSpec spec;
  spec.n_qubits = n_qubits;
  spec.n_layers = n_layers;
  spec.rotations = rotations;
  spec.entangler = std::move(entangler);
  for (int i = 0; i + 1 < n_qubits; ++i) spec.entanglement_map.emplace_back(i, i + 1);
  validate(spec);
  return spec;
}

int rotations_per_qubit(RotationSet r) { return r == RotationSet::Ry ? 1 : 2; }

int parameter_count(const PQCSpec& spec) {
  const int per_layer = spec.n_qubits * rotations_per_qubit(spec.rotations);
  return per_layer * spec.n_layers + per_layer;  // layers plus the trailing layer
}

void validate(const PQCSpec& spec) {
  if (spec.n_qubits < 2)
    throw std::invalid_argument("PQCSpec: need at least 2 qubits");
  if (spec.n_layers < 1)
    throw std::invalid_argument("PQCSpec: need at least 1 layer");
  for (const auto& [control, target] : spec.entanglement_map) {
    if (control < 0 || control >= spec.n_qubits || target < 0 || target >= spec.n_qubits)
      throw std::invalid_argument("PQCSpec: entanglement map qubit out of range");
    if (control == target)
      throw std::invalid_argument("PQCSpec: entanglement map pairs must be distinct qubits");
  }
}

Pqc::Pqc(PQCSpec spec, const CalibrationTable* calibration) : spec_(std::move(spec)) {
  validate(spec_);
  parameter_count_ = crsim::parameter_count(spec_);
  pair_unitaries_.reserve(spec_.entanglement_map.size());
  for (const auto& [control, target] : spec_.entanglement_map) {
    Entangler e = spec_.entangler;
    if (calibration && e.type() != EntanglerType::Cnot)
      e = e.with_coefficients(calibration->lookup(control, target).coeffs);
    pair_unitaries_.push_back(e.unitary());
  }
}

StateVector Pqc::prepare(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != parameter_count_)
    throw std::invalid_argument("Pqc::prepare: expected " + std::to_string(parameter_count_) +
                                " parameters, got " + std::to_string(params.size()));
  const int n = spec_.n_qubits;
  StateVector state(n);
  std::size_t p = 0;
  auto apply_rotations = [&] {
    for (int q = 0; q < n; ++q) state.apply_rotation(Pauli::Y, params[p++], q);
    if (spec_.rotations == RotationSet::RyRz)
      for (int q = 0; q < n; ++q) state.apply_rotation(Pauli::Z, params[p++], q);
  };

  for (int layer = 0; layer < spec_.n_layers; ++layer) {
    apply_rotations();
    for (std::size_t e = 0; e < spec_.entanglement_map.size(); ++e) {
      const int targets[] = {spec_.entanglement_map[e].first, spec_.entanglement_map[e].second};
      state.apply_two_qubit(pair_unitaries_[e], targets[0], targets[1]);
    }
  }
  apply_rotations();
  return state;
}

StateVector prepare_state(const PQCSpec& spec, std::span<const double> params) {
  return Pqc(spec).prepare(params);
}

double estimate_duration(const PQCSpec& spec, const DurationModel& model) {
  validate(spec);
  if (model.single_qubit_ns < 0 || model.entangler_ns_per_pair < 0)
    throw std::invalid_argument("DurationModel: durations must be >= 0");
  const double slots = rotations_per_qubit(spec.rotations);
  const double per_layer = slots * model.single_qubit_ns +
                           static_cast<double>(spec.entanglement_map.size()) *
                               model.entangler_ns_per_pair;
  return spec.n_layers * per_layer + slots * model.single_qubit_ns;
}

DurationModel duration_model_for(const PQCSpec& spec, const CalibrationRecord& record) {
  DurationModel model;
  model.single_qubit_ns = record.single_qubit_duration_ns;
  switch (spec.entangler.type()) {
    case EntanglerType::Cnot:
      model.entangler_ns_per_pair = record.cnot_duration_ns;
      break;
    case EntanglerType::CrAngle:
      // Scheduled cost when calibrated, else sweep the pair's own rate to
      // the requested angle.
      model.entangler_ns_per_pair =
          record.cr_ang_duration_ns > 0
              ? record.cr_ang_duration_ns
              : duration_for_zx_angle(record.coeffs, spec.entangler.theta_rad());
      break;
    case EntanglerType::CrDuration:
      model.entangler_ns_per_pair = record.cr_dur_duration_ns > 0
                                        ? record.cr_dur_duration_ns
                                        : spec.entangler.pulse_duration_ns();
      break;
  }
  return model;
}

namespace {

nlohmann::json entangler_to_json(const Entangler& e) {
  nlohmann::json j{{"kind", e.label()}};
  if (e.type() == EntanglerType::CrAngle) j["theta_rad"] = e.theta_rad();
  if (e.type() == EntanglerType::CrDuration) j["duration_ns"] = e.pulse_duration_ns();
  if (e.type() != EntanglerType::Cnot) {
    const CRCoefficients& c = e.coefficients();
    j["coefficients"] = {{"f_zi", c.f_zi}, {"f_zx", c.f_zx}, {"f_zy", c.f_zy},
                         {"f_zz", c.f_zz}, {"f_ix", c.f_ix}, {"f_iy", c.f_iy},
                         {"f_iz", c.f_iz}};
  }
  return j;
}

Entangler entangler_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  CRCoefficients c = average_cr_coefficients();
  if (j.contains("coefficients")) {
    const auto& jc = j.at("coefficients");
    c.f_zi = jc.at("f_zi").get<double>();
    c.f_zx = jc.at("f_zx").get<double>();
    c.f_zy = jc.at("f_zy").get<double>();
    c.f_zz = jc.at("f_zz").get<double>();
    c.f_ix = jc.at("f_ix").get<double>();
    c.f_iy = jc.at("f_iy").get<double>();
    c.f_iz = jc.at("f_iz").get<double>();
  }
  if (kind == "cnot") return Entangler::cnot();
  if (kind == "cr-ang") return Entangler::cr_angle(j.at("theta_rad").get<double>(), c);
  if (kind == "cr-dur") return Entangler::cr_duration(j.at("duration_ns").get<double>(), c);
  throw std::invalid_argument("entangler kind must be cnot, cr-ang or cr-dur, got '" + kind + "'");
}

}  // namespace

std::string pqc_spec_to_json(const PQCSpec& spec, const std::string& calibration_path) {
  nlohmann::json j{{"n", spec.n_qubits},
                   {"layers", spec.n_layers},
                   {"rotations", spec.rotations == RotationSet::Ry ? "ry" : "ry_rz"},
                   {"entangler", entangler_to_json(spec.entangler)}};
  nlohmann::json map = nlohmann::json::array();
  for (const auto& [c, t] : spec.entanglement_map) map.push_back({c, t});
  j["entanglement_map"] = std::move(map);
  if (!calibration_path.empty()) j["calibration"] = calibration_path;
  return j.dump(2) + "\n";
}

std::pair<PQCSpec, std::string> pqc_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pqc spec JSON: ") + e.what());
  }
  try {
    PQCSpec spec;
    spec.n_qubits = j.at("n").get<int>();
    spec.n_layers = j.at("layers").get<int>();
    const std::string rot = j.at("rotations").get<std::string>();
    if (rot == "ry")
      spec.rotations = RotationSet::Ry;
    else if (rot == "ry_rz")
      spec.rotations = RotationSet::RyRz;
    else
      throw std::invalid_argument("rotations must be 'ry' or 'ry_rz', got '" + rot + "'");
    spec.entangler = entangler_from_json(j.at("entangler"));
    if (j.contains("entanglement_map")) {
      for (const auto& pair : j.at("entanglement_map"))
        spec.entanglement_map.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    } else {
      for (int i = 0; i + 1 < spec.n_qubits; ++i) spec.entanglement_map.emplace_back(i, i + 1);
    }
    validate(spec);
    return {std::move(spec), j.value("calibration", "")};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pqc spec JSON: ") + e.what());
  }
}

}  // namespace crsim
