#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "crsim/cr_model.hpp"
#include "crsim/descriptors.hpp"
#include "crsim/pqc.hpp"

namespace crsim::cli {

// A fit that ran but did not converge; mapped to exit code 3.
class FitFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LayerRange {
  int lo = 1;
  int hi = 1;
};

// "3" or "1..6" (inclusive).
LayerRange parse_range(const std::string& text);

// Calibration source precedence: explicit path, then $CRSIM_CALIBRATION,
// then the bundled device averages.  Second member is the path actually
// loaded ("" for bundled).
std::pair<CalibrationTable, std::string> resolve_calibration(const std::string& flag_path);

// cnot | cr-ang (pi/4 target angle) | cr-dur (150 ns pulse).
Entangler make_entangler(const std::string& kind, const CRCoefficients& coeffs);

RotationSet parse_rotations(const std::string& text);

// global | local:N
CostKind parse_cost(const std::string& text);

}  // namespace crsim::cli
