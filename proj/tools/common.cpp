#include "common.hpp"

#include <cstdlib>
#include <numbers>

#include "crsim/text_format.hpp"

namespace crsim::cli {

namespace {

constexpr double kCrAngleTheta = std::numbers::pi / 4.0;
constexpr double kCrDurationNs = 150.0;

}  // namespace

LayerRange parse_range(const std::string& text) {
  LayerRange range;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    range.lo = range.hi = static_cast<int>(parse_integer(text, "range"));
  } else {
    range.lo = static_cast<int>(parse_integer(text.substr(0, dots), "range start"));
    range.hi = static_cast<int>(parse_integer(text.substr(dots + 2), "range end"));
  }
  if (range.lo < 1 || range.hi < range.lo)
    throw std::invalid_argument("range '" + text + "' must satisfy 1 <= lo <= hi");
  return range;
}

std::pair<CalibrationTable, std::string> resolve_calibration(const std::string& flag_path) {
  std::string path = flag_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CRSIM_CALIBRATION")) path = env;
  }
  if (path.empty()) return {CalibrationTable(), ""};
  return {CalibrationTable::load(path), path};
}

Entangler make_entangler(const std::string& kind, const CRCoefficients& coeffs) {
  if (kind == "cnot") return Entangler::cnot();
  if (kind == "cr-ang") return Entangler::cr_angle(kCrAngleTheta, coeffs);
  if (kind == "cr-dur") return Entangler::cr_duration(kCrDurationNs, coeffs);
  throw std::invalid_argument("unknown entangler '" + kind +
                              "' (expected cnot, cr-ang or cr-dur)");
}

RotationSet parse_rotations(const std::string& text) {
  if (text == "ry") return RotationSet::Ry;
  if (text == "ryrz") return RotationSet::RyRz;
  throw std::invalid_argument("unknown rotation set '" + text + "' (expected ry or ryrz)");
}

CostKind parse_cost(const std::string& text) {
  if (text == "global") return CostKind::global();
  if (text.rfind("local:", 0) == 0) {
    const int n_c = static_cast<int>(parse_integer(text.substr(6), "local cost width"));
    if (n_c < 1) throw std::invalid_argument("local cost width must be >= 1");
    return CostKind::local(n_c);
  }
  throw std::invalid_argument("unknown cost '" + text + "' (expected global or local:N)");
}

}  // namespace crsim::cli
