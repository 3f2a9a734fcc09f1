#include "crsim/cr_model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace crsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxCoefficientMhz = 1000.0;
constexpr double kMaxPulseNs = 10000.0;
constexpr std::complex<double> kImag{0.0, 1.0};

// exp(-i * (phase0 * I + v . sigma)) as a 2x2 block, with |v| handled at zero.
Eigen::Matrix2cd block_exp(double phase0, const Eigen::Vector3d& v) {
  const double r = v.norm();
  const std::complex<double> g = std::exp(-kImag * phase0);
  Eigen::Matrix2cd m;
  if (r < 1e-300) {
    m = g * Eigen::Matrix2cd::Identity();
    return m;
  }
  const double c = std::cos(r);
  const double s = std::sin(r);
  const Eigen::Vector3d n = v / r;
  // cos(r) I - i sin(r) (n . sigma)
  m(0, 0) = c - kImag * s * n.z();
  m(0, 1) = -kImag * s * (n.x() - kImag * n.y());
  m(1, 0) = -kImag * s * (n.x() + kImag * n.y());
  m(1, 1) = c + kImag * s * n.z();
  return g * m;
}

}  // namespace

void validate(const CRCoefficients& c) {
  const double fields[] = {c.f_zi, c.f_zx, c.f_zy, c.f_zz, c.f_ix, c.f_iy, c.f_iz};
  for (double f : fields) {
    if (!std::isfinite(f))
      throw std::invalid_argument("CRCoefficients: coefficients must be finite");
    if (std::abs(f) >= kMaxCoefficientMhz)
      throw std::invalid_argument("CRCoefficients: |f| must stay below 1000 MHz");
  }
}

CRCoefficients average_cr_coefficients() {
  CRCoefficients c;
  c.f_zi = 14.5783;
  c.f_zx = 0.69645487;
  c.f_zy = -0.0112463;
  c.f_zz = -0.04056;
  c.f_ix = -0.1102794;
  c.f_iy = 0.03167672;
  c.f_iz = 0.03557382;
  return c;
}

Eigen::Matrix4cd build_cr_hamiltonian(const CRCoefficients& c) {
  validate(c);
  // 2*pi * (Z (x) A + I (x) B) / 2 with A, B in MHz gives rad/us entries.
  Matrix a = kPi * (c.f_zi * pauli_matrix(Pauli::I) + c.f_zx * pauli_matrix(Pauli::X) +
                    c.f_zy * pauli_matrix(Pauli::Y) + c.f_zz * pauli_matrix(Pauli::Z));
  Matrix b = kPi * (c.f_ix * pauli_matrix(Pauli::X) + c.f_iy * pauli_matrix(Pauli::Y) +
                    c.f_iz * pauli_matrix(Pauli::Z));
  Matrix h = kron(pauli_matrix(Pauli::Z), a) + kron(pauli_matrix(Pauli::I), b);
  return h;
}

Eigen::Matrix4cd cr_unitary(const CRCoefficients& c, double duration_ns) {
  validate(c);
  if (!std::isfinite(duration_ns) || duration_ns < 0.0)
    throw std::invalid_argument("cr_unitary: duration_ns must be >= 0");
  const double t_us = duration_ns * 1e-3;

  // H commutes with Z (x) I, so each control block evolves under the 2x2
  // Hamiltonian pi*(+-f_zi I + w . sigma) with w = (f_ix +- f_zx, ...).
  const Eigen::Vector3d w0{c.f_ix + c.f_zx, c.f_iy + c.f_zy, c.f_iz + c.f_zz};
  const Eigen::Vector3d w1{c.f_ix - c.f_zx, c.f_iy - c.f_zy, c.f_iz - c.f_zz};
  const Eigen::Matrix2cd u0 = block_exp(kPi * c.f_zi * t_us, kPi * t_us * w0);
  const Eigen::Matrix2cd u1 = block_exp(-kPi * c.f_zi * t_us, kPi * t_us * w1);

  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u.block<2, 2>(0, 0) = u0;
  u.block<2, 2>(2, 2) = u1;
  return u;
}

double duration_for_zx_angle(const CRCoefficients& c, double theta_rad) {
  validate(c);
  if (c.f_zx == 0.0)
    throw std::invalid_argument("duration_for_zx_angle: f_zx is zero, no ZX rate to sweep");
  if (!(theta_rad > 0.0))
    throw std::invalid_argument("duration_for_zx_angle: theta must be positive");
  // theta = 2*pi*f_zx*t with f in MHz and t in us; report ns.
  return theta_rad / (2.0 * kPi * c.f_zx) * 1e3;
}

Eigen::Matrix4cd cnot_unitary() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

Entangler Entangler::cnot() {
  Entangler e;
  e.type_ = EntanglerType::Cnot;
  return e;
}

Entangler Entangler::cr_angle(double theta_rad, const CRCoefficients& c) {
  validate(c);
  if (!(theta_rad > 0.0) || theta_rad > kPi)
    throw std::invalid_argument("Entangler::cr_angle: theta must lie in (0, pi]");
  Entangler e;
  e.type_ = EntanglerType::CrAngle;
  e.theta_rad_ = theta_rad;
  e.coeffs_ = c;
  e.duration_ns_ = duration_for_zx_angle(c, theta_rad);
  if (!(e.duration_ns_ > 0.0) || e.duration_ns_ > kMaxPulseNs)
    throw std::invalid_argument(
        "Entangler::cr_angle: implied pulse duration falls outside (0, 10000] ns");
  return e;
}

Entangler Entangler::cr_duration(double duration_ns, const CRCoefficients& c) {
  validate(c);
  if (!(duration_ns > 0.0) || duration_ns > kMaxPulseNs)
    throw std::invalid_argument("Entangler::cr_duration: duration must lie in (0, 10000] ns");
  Entangler e;
  e.type_ = EntanglerType::CrDuration;
  e.duration_ns_ = duration_ns;
  e.coeffs_ = c;
  return e;
}

Entangler Entangler::with_coefficients(const CRCoefficients& c) const {
  switch (type_) {
    case EntanglerType::Cnot: return cnot();
    case EntanglerType::CrAngle: return cr_angle(theta_rad_, c);
    case EntanglerType::CrDuration: return cr_duration(duration_ns_, c);
  }
  throw std::logic_error("Entangler: unknown type");
}

Eigen::Matrix4cd Entangler::unitary() const {
  switch (type_) {
    case EntanglerType::Cnot: return cnot_unitary();
    case EntanglerType::CrAngle:
    case EntanglerType::CrDuration: return cr_unitary(coeffs_, duration_ns_);
  }
  throw std::logic_error("Entangler: unknown type");
}

std::string Entangler::label() const {
  switch (type_) {
    case EntanglerType::Cnot: return "cnot";
    case EntanglerType::CrAngle: return "cr-ang";
    case EntanglerType::CrDuration: return "cr-dur";
  }
  throw std::logic_error("Entangler: unknown type");
}

Eigen::Matrix4cd entangler_unitary(const Entangler& e) { return e.unitary(); }

namespace {

nlohmann::json coefficients_to_json(const CRCoefficients& c) {
  return {{"f_zi", c.f_zi}, {"f_zx", c.f_zx}, {"f_zy", c.f_zy}, {"f_zz", c.f_zz},
          {"f_ix", c.f_ix}, {"f_iy", c.f_iy}, {"f_iz", c.f_iz}};
}

CRCoefficients coefficients_from_json(const nlohmann::json& j) {
  CRCoefficients c;
  c.f_zi = j.at("f_zi").get<double>();
  c.f_zx = j.at("f_zx").get<double>();
  c.f_zy = j.at("f_zy").get<double>();
  c.f_zz = j.at("f_zz").get<double>();
  c.f_ix = j.at("f_ix").get<double>();
  c.f_iy = j.at("f_iy").get<double>();
  c.f_iz = j.at("f_iz").get<double>();
  validate(c);
  return c;
}

}  // namespace

CalibrationTable::CalibrationTable() {
  defaults_.control = -1;
  defaults_.target = -1;
  defaults_.coeffs = average_cr_coefficients();
}

CalibrationTable CalibrationTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open calibration file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("calibration file " + path.string() + ": " + e.what());
  }
  CalibrationTable table;
  try {
    for (const auto& rec : j.at("pairs")) {
      CalibrationRecord r;
      r.control = rec.at("pair").at(0).get<int>();
      r.target = rec.at("pair").at(1).get<int>();
      r.coeffs = coefficients_from_json(rec);
      r.cnot_duration_ns = rec.value("cnot_duration_ns", table.defaults_.cnot_duration_ns);
      r.single_qubit_duration_ns =
          rec.value("single_qubit_duration_ns", table.defaults_.single_qubit_duration_ns);
      r.cr_ang_duration_ns = rec.value("cr_ang_duration_ns", -1.0);
      r.cr_dur_duration_ns = rec.value("cr_dur_duration_ns", -1.0);
      if (r.control == r.target)
        throw std::runtime_error("pair endpoints must differ");
      table.add(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("calibration file " + path.string() + ": " + e.what());
  }
  if (!table.records_.empty()) {
    // First record doubles as the fallback schedule for unlisted pairs.
    table.defaults_.cnot_duration_ns = table.records_.front().cnot_duration_ns;
    table.defaults_.single_qubit_duration_ns = table.records_.front().single_qubit_duration_ns;
    table.defaults_.cr_ang_duration_ns = table.records_.front().cr_ang_duration_ns;
    table.defaults_.cr_dur_duration_ns = table.records_.front().cr_dur_duration_ns;
  }
  return table;
}

void CalibrationTable::save(const std::filesystem::path& path) const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& r : records_) {
    nlohmann::json rec = coefficients_to_json(r.coeffs);
    rec["pair"] = {r.control, r.target};
    rec["cnot_duration_ns"] = r.cnot_duration_ns;
    rec["single_qubit_duration_ns"] = r.single_qubit_duration_ns;
    if (r.cr_ang_duration_ns > 0) rec["cr_ang_duration_ns"] = r.cr_ang_duration_ns;
    if (r.cr_dur_duration_ns > 0) rec["cr_dur_duration_ns"] = r.cr_dur_duration_ns;
    pairs.push_back(std::move(rec));
  }
  nlohmann::json j{{"pairs", std::move(pairs)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write calibration file: " + path.string());
  out << j.dump(2) << "\n";
}

const CalibrationRecord& CalibrationTable::lookup(int control, int target) const {
  for (const auto& r : records_)
    if (r.control == control && r.target == target) return r;
  return defaults_;
}

void CalibrationTable::add(CalibrationRecord record) {
  validate(record.coeffs);
  if (record.cnot_duration_ns <= 0 || record.single_qubit_duration_ns <= 0)
    throw std::invalid_argument("CalibrationRecord: scheduled durations must be positive");
  records_.push_back(std::move(record));
}

}  // namespace crsim
