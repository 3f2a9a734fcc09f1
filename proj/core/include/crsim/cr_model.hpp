#pragma once

#include <filesystem>
#include <vector>

#include "crsim/gates.hpp"

namespace crsim {

// Effective two-qubit drive coefficients, as frequencies in MHz (f = omega/2pi).
// The control-conditional terms are f_z*, the unconditional target terms f_i*,
// and f_zi is the control Stark shift.
struct CRCoefficients {
  double f_zi = 0.0;
  double f_zx = 0.0;
  double f_zy = 0.0;
  double f_zz = 0.0;
  double f_ix = 0.0;
  double f_iy = 0.0;
  double f_iz = 0.0;
};

void validate(const CRCoefficients& c);

// Bundled device-average calibration, used whenever no calibration file is
// supplied.
CRCoefficients average_cr_coefficients();

// H = 2*pi * [ Z (x) A / 2 + I (x) B / 2 ],  A = f_zi*I + f_zx*X + f_zy*Y + f_zz*Z,
// B = f_ix*X + f_iy*Y + f_iz*Z.  Control is qubit 0 (the first tensor factor).
// Entries are angular frequencies in rad/us, so exp(-i H t[us]) propagates it.
Eigen::Matrix4cd build_cr_hamiltonian(const CRCoefficients& c);

// exp(-i H t) for the Hamiltonian above, evaluated analytically per control
// block (H commutes with Z (x) I).  duration_ns >= 0; 1 MHz * 1000 ns = 1 cycle.
Eigen::Matrix4cd cr_unitary(const CRCoefficients& c, double duration_ns);

// Drive time in ns after which the accumulated ZX angle 2*pi*f_zx*t equals
// theta_rad.  Throws if f_zx == 0; negative f_zx yields a negative duration.
double duration_for_zx_angle(const CRCoefficients& c, double theta_rad);

// CNOT with qubit 0 as control.
Eigen::Matrix4cd cnot_unitary();

enum class EntanglerType { Cnot, CrAngle, CrDuration };

// The two-qubit primitive a circuit layer repeats: a digital CNOT or a raw
// cross-resonance pulse, either swept to a target ZX angle or held for a
// fixed duration.
class Entangler {
 public:
  static Entangler cnot();
  // theta_rad in (0, pi]; the implied pulse duration must land in (0, 10000] ns.
  static Entangler cr_angle(double theta_rad, const CRCoefficients& c);
  // duration_ns in (0, 10000].
  static Entangler cr_duration(double duration_ns, const CRCoefficients& c);

  EntanglerType type() const { return type_; }
  double theta_rad() const { return theta_rad_; }
  const CRCoefficients& coefficients() const { return coeffs_; }

  // Pulse length of one application in ns (the digital CNOT has none here;
  // its scheduled cost comes from calibration data instead).
  double pulse_duration_ns() const { return duration_ns_; }

  // Same entangler with its coefficients replaced (per-pair calibration).
  Entangler with_coefficients(const CRCoefficients& c) const;

  Eigen::Matrix4cd unitary() const;

  // Stable label used in CSV/JSON output: cnot, cr-ang or cr-dur.
  std::string label() const;

 private:
  Entangler() = default;
  EntanglerType type_ = EntanglerType::Cnot;
  double theta_rad_ = 0.0;
  double duration_ns_ = 0.0;
  CRCoefficients coeffs_;
};

Eigen::Matrix4cd entangler_unitary(const Entangler& e);

// One calibrated qubit pair: drive coefficients plus scheduled gate costs.
// The two cr_* durations are the as-scheduled pulse costs; values <= 0 mean
// "derive from the drive physics" (rate-to-angle for cr-ang, the pulse length
// itself for cr-dur).
struct CalibrationRecord {
  int control = 0;
  int target = 1;
  CRCoefficients coeffs;
  double cnot_duration_ns = 390.0;
  double single_qubit_duration_ns = 35.0;
  double cr_ang_duration_ns = -1.0;
  double cr_dur_duration_ns = -1.0;
};

// Calibration file contents; lookups fall back to the bundled averages when a
// pair has no record of its own.
class CalibrationTable {
 public:
  CalibrationTable();
  static CalibrationTable load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  const CalibrationRecord& lookup(int control, int target) const;
  const CalibrationRecord& defaults() const { return defaults_; }
  const std::vector<CalibrationRecord>& records() const { return records_; }
  void add(CalibrationRecord record);

 private:
  std::vector<CalibrationRecord> records_;
  CalibrationRecord defaults_;
};

}  // namespace crsim
