#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "crsim/cr_model.hpp"

namespace crsim {

// One measured decay curve: target (or control, for Ramsey data) expectation
// values of a single Pauli axis over a shared duration grid.
struct TomographySeries {
  std::vector<double> durations_ns;
  int control_state = 0;  // 0 or 1; Ramsey series keep 0 by convention
  char basis = 'Z';       // 'X', 'Y' or 'Z'
  std::vector<double> values;
  int shots = 0;  // 0 means exact expectation values
};

// The supplied duration grid cannot resolve the dominant oscillation.
class GridTooCoarseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FitOptions {
  int max_iterations = 400;
  // Threshold on residual_rms below which the fit reports converged.
  // <= 0 selects automatically: 1e-6 for exact data, 5/sqrt(shots) otherwise.
  double residual_threshold = -1.0;
  // Amplitude below which a series counts as unresolvable ("no signal").
  // <= 0 selects automatically, mirroring residual_threshold.
  double sensitivity = -1.0;
};

struct FitResult {
  CRCoefficients coefficients;  // f_zi stays 0 here; see fit_zi
  double residual_rms = 0.0;
  bool converged = false;
  bool below_sensitivity = false;  // some control block carried no signal and was zeroed
};

// Simulates the six-series characterization experiment: control prepared in
// |0> or |1>, the pair evolved for each duration, and the target's X/Y/Z
// expectations recorded.  shots = 0 stores exact values, otherwise each point
// is a binomial estimate from that many single-shot measurements.  Output
// order: (control 0: X, Y, Z), (control 1: X, Y, Z).
std::vector<TomographySeries> simulate_ht(const CRCoefficients& c,
                                          std::span<const double> durations_ns,
                                          int shots, std::uint64_t seed);

// Bloch vector of a target that starts at (0, 0, 1) and precesses about the
// effective field omega (MHz): Rodrigues rotation about omega/|omega| by
// angle 2*pi*|omega|*t.
Eigen::Vector3d bloch_trajectory(const Eigen::Vector3d& omega_mhz, double t_ns);

// Dominant oscillation frequency (MHz) of a mean-subtracted real signal via a
// dense scan of its discrete-time Fourier magnitude plus parabolic refinement.
double dominant_frequency_mhz(std::span<const double> t_ns, std::span<const double> values);

// Recovers the six in-plane coefficients from the six series by fitting each
// control block's effective field with damped least squares (multi-start,
// seeded from the dominant Z-series frequency), then splitting the block
// fields into conditional and unconditional parts.  f_zi is not identifiable
// from this data and is reported as 0; see simulate_ramsey_zi / fit_zi.
// Throws GridTooCoarseError when the grid undersamples the dominant period
// (fewer than 8 points per period).
FitResult fit_cr_coefficients(std::span<const TomographySeries> series,
                              const FitOptions& options = {});

// Ramsey experiment that exposes f_zi: control prepared in (|0>+|1>)/sqrt(2),
// target in |0>, and the control's X/Y expectations recorded per duration.
// Output order: X series, Y series.
std::vector<TomographySeries> simulate_ramsey_zi(const CRCoefficients& c,
                                                 std::span<const double> durations_ns,
                                                 int shots, std::uint64_t seed);

// Control phase winding rate in MHz from the Ramsey series, via a weighted
// linear fit of the unwrapped phase of <X> + i<Y>.  Grid checks mirror
// fit_cr_coefficients but only require sub-Nyquist sampling, since the phase
// fit tolerates fewer than 8 points per winding period.
//
// The conditional target dynamics modulate the control phase, biasing a bare
// linear fit by several percent when the in-plane terms are comparable to the
// grid span.  The `envelope` overloads take the in-plane fit result (f_zi
// entry ignored), predict that modulation and divide it out first; the bare
// overloads assume a pure winding tone.
double fit_zi(std::span<const TomographySeries> series, const FitOptions& options = {});
double fit_zi(std::span<const TomographySeries> series, const CRCoefficients& envelope,
              const FitOptions& options = {});

struct ZiFitDetail {
  double f_zi_mhz = 0.0;
  double phase_residual_rms = 0.0;  // radians
  bool converged = false;
  bool below_sensitivity = false;
};
ZiFitDetail fit_zi_detailed(std::span<const TomographySeries> series,
                            const FitOptions& options = {});
ZiFitDetail fit_zi_detailed(std::span<const TomographySeries> series,
                            const CRCoefficients& envelope, const FitOptions& options = {});

// CSV with header duration_ns,control_state,basis,value (shots rides along as
// a trailing column so a file round-trips losslessly).
void write_series_csv(const std::filesystem::path& path,
                      std::span<const TomographySeries> series);
std::vector<TomographySeries> read_series_csv(const std::filesystem::path& path);

}  // namespace crsim
