#include "crsim/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "crsim/pauli_sum.hpp"
#include "crsim/rng.hpp"
#include "crsim/state_vector.hpp"
#include "crsim/text_format.hpp"

namespace crsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double auto_threshold(const FitOptions& options, int shots) {
  if (options.residual_threshold > 0.0) return options.residual_threshold;
  return shots > 0 ? 5.0 / std::sqrt(static_cast<double>(shots)) : 1e-6;
}

double auto_sensitivity(const FitOptions& options, int shots) {
  if (options.sensitivity > 0.0) return options.sensitivity;
  return shots > 0 ? 5.0 / std::sqrt(static_cast<double>(shots)) : 1e-6;
}

void check_durations(std::span<const double> t) {
  if (t.empty()) throw std::invalid_argument("tomography: empty duration grid");
  for (double v : t)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("tomography: durations must be finite and >= 0");
}

// Largest adjacent spacing of a strictly increasing grid.
double grid_spacing_ns(std::span<const double> t) {
  double dt = 0.0;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const double step = t[j] - t[j - 1];
    if (step <= 0.0)
      throw std::invalid_argument("tomography: duration grid must increase strictly");
    dt = std::max(dt, step);
  }
  return dt;
}

double sampled_expectation(double exact, int shots, RandomStream& rng) {
  const double p_up = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
  int ups = 0;
  for (int s = 0; s < shots; ++s)
    if (rng.bernoulli(p_up)) ++ups;
  return 2.0 * static_cast<double>(ups) / shots - 1.0;
}

// ----- in-plane fit machinery ---------------------------------------------

// Data of one control block: X, Y, Z values over a shared grid.
struct BlockData {
  std::span<const double> t;
  std::array<std::span<const double>, 3> values;  // X, Y, Z
  int shots = 0;
};

Eigen::VectorXd block_residuals(const Eigen::Vector3d& omega, const BlockData& d) {
  const std::size_t n = d.t.size();
  Eigen::VectorXd r(3 * n);
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Vector3d model = bloch_trajectory(omega, d.t[j]);
    for (int axis = 0; axis < 3; ++axis)
      r(axis * n + j) = model(axis) - d.values[axis][j];
  }
  return r;
}

// Damped least squares (Levenberg-Marquardt with Marquardt scaling and a
// numeric Jacobian); returns the refined field and its residual sum.
std::pair<Eigen::Vector3d, double> refine_block(Eigen::Vector3d omega, const BlockData& d,
                                                int max_iterations) {
  double lambda = 1e-3;
  Eigen::VectorXd r = block_residuals(omega, d);
  double cost = r.squaredNorm();
  for (int iter = 0; iter < max_iterations; ++iter) {
    Eigen::MatrixXd jac(r.size(), 3);
    for (int p = 0; p < 3; ++p) {
      const double step = 1e-7 * std::max(1.0, std::abs(omega(p)));
      Eigen::Vector3d hi = omega, lo = omega;
      hi(p) += step;
      lo(p) -= step;
      jac.col(p) = (block_residuals(hi, d) - block_residuals(lo, d)) / (2.0 * step);
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d jtr = jac.transpose() * r;
    if (jtr.norm() < 1e-14) break;

    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      Eigen::Matrix3d damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::Vector3d delta = damped.ldlt().solve(-jtr);
      Eigen::VectorXd r_new = block_residuals(omega + delta, d);
      const double cost_new = r_new.squaredNorm();
      if (cost_new < cost) {
        omega += delta;
        r = std::move(r_new);
        const double improvement = cost - cost_new;
        cost = cost_new;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        if (improvement < 1e-24 || delta.norm() < 1e-13) return {omega, cost};
      } else {
        lambda *= 10.0;
        if (lambda > 1e14) return {omega, cost};
      }
    }
    if (!accepted) break;
  }
  return {omega, cost};
}

struct BlockFit {
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  double residual_sum_sq = 0.0;
  std::size_t residual_count = 0;
  bool below_sensitivity = false;
};

BlockFit fit_block(const BlockData& d, const FitOptions& options) {
  const std::size_t n = d.t.size();
  BlockFit out;
  out.residual_count = 3 * n;

  // Rest point is (0, 0, 1): no discernible deviation means the field is too
  // weak to resolve on this grid, and the coefficients are reported as zero.
  const double sens = auto_sensitivity(options, d.shots);
  double max_dev = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double rest = axis == 2 ? 1.0 : 0.0;
    for (double v : d.values[axis]) max_dev = std::max(max_dev, std::abs(v - rest));
  }
  if (max_dev < sens) {
    out.below_sensitivity = true;
    out.residual_sum_sq = block_residuals(Eigen::Vector3d::Zero(), d).squaredNorm();
    return out;
  }

  const double dt = grid_spacing_ns(d.t);
  std::vector<double> z_values(d.values[2].begin(), d.values[2].end());
  const double f_est = dominant_frequency_mhz(d.t, z_values);

  // Refuse grids that cannot resolve the dominant period: the Bloch fit needs
  // at least 8 samples per period (which also keeps it under Nyquist).
  if (n < 8 || (f_est > 0.0 && 1000.0 / (f_est * dt) < 8.0))
    throw GridTooCoarseError(
        "fit_cr_coefficients: duration grid is too coarse for the dominant oscillation "
        "(need at least 8 points per period; estimated " +
        format_double(f_est) + " MHz with " + format_double(dt) +
        " ns spacing); extend or densify the grid");

  // Multi-start: every axis-sign assignment of the estimated magnitude, plus
  // two seeds from the exact early-time slopes dr_x/dt = 2*pi*w_y and
  // dr_y/dt = -2*pi*w_x.
  std::vector<Eigen::Vector3d> starts;
  const double mag = std::max(f_est, 1e-6);
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1})
        starts.push_back(mag / std::sqrt(3.0) * Eigen::Vector3d(sx, sy, sz));
  if (n >= 2) {
    const double dt0_us = (d.t[1] - d.t[0]) * 1e-3;
    const double wy = (d.values[0][1] - d.values[0][0]) / dt0_us / kTwoPi;
    const double wx = -(d.values[1][1] - d.values[1][0]) / dt0_us / kTwoPi;
    const double wz2 = std::max(f_est * f_est - wx * wx - wy * wy, 0.0);
    starts.emplace_back(wx, wy, std::sqrt(wz2));
    starts.emplace_back(wx, wy, -std::sqrt(wz2));
  }

  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    auto [omega, cost] = refine_block(start, d, options.max_iterations);
    if (cost < best_cost) {
      best_cost = cost;
      out.omega = omega;
    }
  }
  out.residual_sum_sq = best_cost;

  // A field beyond Nyquist cannot be what the data shows; treat it as the
  // same unresolvable-grid condition.
  if (out.omega.norm() > 500.0 / dt)
    throw GridTooCoarseError(
        "fit_cr_coefficients: fitted field exceeds the grid Nyquist frequency; "
        "densify the duration grid");
  return out;
}

const TomographySeries& find_series(std::span<const TomographySeries> series,
                                    int control_state, char basis) {
  for (const auto& s : series)
    if (s.control_state == control_state && s.basis == basis) return s;
  throw std::invalid_argument(std::string("fit_cr_coefficients: missing series control=") +
                              std::to_string(control_state) + " basis=" + basis);
}

}  // namespace

std::vector<TomographySeries> simulate_ht(const CRCoefficients& c,
                                          std::span<const double> durations_ns,
                                          int shots, std::uint64_t seed) {
  validate(c);
  check_durations(durations_ns);
  if (shots < 0) throw std::invalid_argument("simulate_ht: shots must be >= 0");

  std::vector<TomographySeries> out;
  int series_index = 0;
  for (int control = 0; control <= 1; ++control) {
    for (char basis : {'X', 'Y', 'Z'}) {
      TomographySeries s;
      s.durations_ns.assign(durations_ns.begin(), durations_ns.end());
      s.control_state = control;
      s.basis = basis;
      s.shots = shots;
      s.values.reserve(durations_ns.size());
      const std::string observable = std::string("I") + basis;  // target axis
      RandomStream rng(derive_seed(seed, 0x746f6d6fULL, series_index));
      for (double t : durations_ns) {
        StateVector state = StateVector::computational_basis(2, control ? 2 : 0);
        const int targets[] = {0, 1};
        state.apply_unitary(cr_unitary(c, t), targets);
        const double exact = expectation(state, observable);
        s.values.push_back(shots > 0 ? sampled_expectation(exact, shots, rng) : exact);
      }
      out.push_back(std::move(s));
      ++series_index;
    }
  }
  return out;
}

Eigen::Vector3d bloch_trajectory(const Eigen::Vector3d& omega_mhz, double t_ns) {
  const double mag = omega_mhz.norm();
  const Eigen::Vector3d r0(0.0, 0.0, 1.0);
  if (mag < 1e-300) return r0;
  const Eigen::Vector3d axis = omega_mhz / mag;
  const double phi = kTwoPi * mag * t_ns * 1e-3;  // MHz * ns -> cycles via 1e-3
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return r0 * c + axis.cross(r0) * s + axis * (axis.dot(r0)) * (1.0 - c);
}

double dominant_frequency_mhz(std::span<const double> t_ns, std::span<const double> values) {
  if (t_ns.size() != values.size())
    throw std::invalid_argument("dominant_frequency_mhz: grid and values differ in length");
  if (t_ns.size() < 2) return 0.0;
  const double dt = grid_spacing_ns(t_ns);
  const double f_nyq = 500.0 / dt;  // MHz

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  // Dense scan of the detrended signal's DTFT magnitude.  The grid spans well
  // under two periods in the slow regimes this fits, so a plain FFT bin would
  // be far too coarse; the scan resolves sub-bin peaks directly.
  constexpr int kScan = 2048;
  double best_f = 0.0, best_mag = -1.0;
  std::array<double, kScan + 1> mags{};
  for (int k = 0; k <= kScan; ++k) {
    const double f = f_nyq * k / kScan;
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j)
      acc += (values[j] - mean) * std::exp(std::complex<double>(0.0, -kTwoPi * f * t_ns[j] * 1e-3));
    mags[k] = std::abs(acc);
    if (mags[k] > best_mag) {
      best_mag = mags[k];
      best_f = f;
    }
  }
  // Parabolic refinement around the peak sample.
  const int k0 = static_cast<int>(std::lround(best_f / f_nyq * kScan));
  if (k0 > 0 && k0 < kScan) {
    const double a = mags[k0 - 1], b = mags[k0], c = mags[k0 + 1];
    const double denom = a - 2.0 * b + c;
    if (std::abs(denom) > 1e-30) {
      const double shift = 0.5 * (a - c) / denom;
      best_f += std::clamp(shift, -1.0, 1.0) * f_nyq / kScan;
    }
  }
  return best_f;
}

FitResult fit_cr_coefficients(std::span<const TomographySeries> series,
                              const FitOptions& options) {
  if (series.size() != 6)
    throw std::invalid_argument("fit_cr_coefficients: expected the six series "
                                "(control 0/1 x basis X/Y/Z)");
  const auto& reference = find_series(series, 0, 'X');
  check_durations(reference.durations_ns);
  for (const auto& s : series) {
    if (s.durations_ns != reference.durations_ns)
      throw std::invalid_argument("fit_cr_coefficients: series grids differ");
    if (s.values.size() != s.durations_ns.size())
      throw std::invalid_argument("fit_cr_coefficients: series length mismatch");
  }

  std::array<BlockFit, 2> fits;
  for (int control = 0; control <= 1; ++control) {
    BlockData d;
    d.t = reference.durations_ns;
    d.values = {find_series(series, control, 'X').values,
                find_series(series, control, 'Y').values,
                find_series(series, control, 'Z').values};
    d.shots = reference.shots;
    fits[control] = fit_block(d, options);
  }

  FitResult result;
  const Eigen::Vector3d& w0 = fits[0].omega;
  const Eigen::Vector3d& w1 = fits[1].omega;
  result.coefficients.f_zx = (w0.x() - w1.x()) / 2.0;
  result.coefficients.f_zy = (w0.y() - w1.y()) / 2.0;
  result.coefficients.f_zz = (w0.z() - w1.z()) / 2.0;
  result.coefficients.f_ix = (w0.x() + w1.x()) / 2.0;
  result.coefficients.f_iy = (w0.y() + w1.y()) / 2.0;
  result.coefficients.f_iz = (w0.z() + w1.z()) / 2.0;
  result.coefficients.f_zi = 0.0;  // invisible to this experiment by design

  const double sum_sq = fits[0].residual_sum_sq + fits[1].residual_sum_sq;
  const auto count = fits[0].residual_count + fits[1].residual_count;
  result.residual_rms = std::sqrt(sum_sq / static_cast<double>(count));
  result.below_sensitivity = fits[0].below_sensitivity || fits[1].below_sensitivity;
  result.converged = result.residual_rms <= auto_threshold(options, reference.shots);
  return result;
}

std::vector<TomographySeries> simulate_ramsey_zi(const CRCoefficients& c,
                                                 std::span<const double> durations_ns,
                                                 int shots, std::uint64_t seed) {
  validate(c);
  check_durations(durations_ns);
  if (shots < 0) throw std::invalid_argument("simulate_ramsey_zi: shots must be >= 0");

  Eigen::VectorXcd plus0(4);
  plus0 << 1.0, 0.0, 1.0, 0.0;  // (|00> + |10>)/sqrt(2)
  const StateVector initial = StateVector::normalized(2, plus0);

  std::vector<TomographySeries> out;
  int series_index = 0;
  for (char basis : {'X', 'Y'}) {
    TomographySeries s;
    s.durations_ns.assign(durations_ns.begin(), durations_ns.end());
    s.control_state = 0;  // control rides in superposition; field kept for the CSV schema
    s.basis = basis;
    s.shots = shots;
    RandomStream rng(derive_seed(seed, 0x72616d73ULL, series_index));
    const std::string observable = std::string(1, basis) + "I";  // control axis
    for (double t : durations_ns) {
      StateVector state = initial;
      const int targets[] = {0, 1};
      state.apply_unitary(cr_unitary(c, t), targets);
      const double exact = expectation(state, observable);
      s.values.push_back(shots > 0 ? sampled_expectation(exact, shots, rng) : exact);
    }
    out.push_back(std::move(s));
    ++series_index;
  }
  return out;
}

namespace {

// exp(-i pi t w.sigma): one conditional target rotation of the block form.
Eigen::Matrix2cd target_rotation(const Eigen::Vector3d& w_mhz, double t_ns) {
  const double angle = kPi * w_mhz.norm() * t_ns * 1e-3;
  Eigen::Matrix2cd m = std::cos(angle) * Eigen::Matrix2cd::Identity();
  if (w_mhz.norm() > 0.0) {
    const Eigen::Vector3d nh = w_mhz.normalized();
    Eigen::Matrix2cd sigma;
    sigma << nh.z(), std::complex<double>(nh.x(), -nh.y()),
        std::complex<double>(nh.x(), nh.y()), -nh.z();
    m -= std::complex<double>(0.0, std::sin(angle)) * sigma;
  }
  return m;
}

}  // namespace

ZiFitDetail fit_zi_detailed(std::span<const TomographySeries> series,
                            const CRCoefficients& envelope, const FitOptions& options) {
  if (series.size() != 2)
    throw std::invalid_argument("fit_zi: expected the X and Y control series");
  const TomographySeries* sx = nullptr;
  const TomographySeries* sy = nullptr;
  for (const auto& s : series) {
    if (s.basis == 'X') sx = &s;
    if (s.basis == 'Y') sy = &s;
  }
  if (!sx || !sy) throw std::invalid_argument("fit_zi: need one X and one Y series");
  check_durations(sx->durations_ns);
  if (sx->durations_ns != sy->durations_ns)
    throw std::invalid_argument("fit_zi: series grids differ");
  const std::size_t n = sx->durations_ns.size();
  if (sx->values.size() != n || sy->values.size() != n)
    throw std::invalid_argument("fit_zi: series length mismatch");
  if (n < 8)
    throw GridTooCoarseError("fit_zi: need at least 8 samples on the duration grid");

  const std::span<const double> t = sx->durations_ns;
  const double dt = grid_spacing_ns(t);
  const double f_nyq = 500.0 / dt;

  std::vector<std::complex<double>> signal(n);
  for (std::size_t j = 0; j < n; ++j) signal[j] = {sx->values[j], sy->values[j]};

  ZiFitDetail detail;
  const double sens = auto_sensitivity(options, sx->shots);
  double max_mag = 0.0;
  for (const auto& s : signal) max_mag = std::max(max_mag, std::abs(s));
  if (max_mag < sens) {
    detail.below_sensitivity = true;
    detail.converged = true;
    return detail;
  }

  // Divide out the predicted conditional-dynamics modulation <0|V0' V1|0>
  // so the remaining tone winds at f_zi alone.  A zero envelope leaves the
  // signal untouched.  Points where the modulation collapses carry no phase
  // information and are masked.
  const Eigen::Vector3d w0(envelope.f_ix + envelope.f_zx, envelope.f_iy + envelope.f_zy,
                           envelope.f_iz + envelope.f_zz);
  const Eigen::Vector3d w1(envelope.f_ix - envelope.f_zx, envelope.f_iy - envelope.f_zy,
                           envelope.f_iz - envelope.f_zz);
  std::vector<std::complex<double>> tone(n);
  std::vector<double> weight(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> g =
        (target_rotation(w0, t[j]).adjoint() * target_rotation(w1, t[j]))(0, 0);
    if (std::abs(g) < 0.05) {
      tone[j] = 0.0;
      weight[j] = 0.0;
      continue;
    }
    tone[j] = signal[j] / g;
    // |s|^2 de-emphasizes points where the phasor collapses and the phase is
    // ill-defined (shot noise dominates the angle there).
    weight[j] = std::abs(signal[j]) < 0.05 ? 0.0 : std::norm(signal[j]);
  }

  // Signed dominant frequency of the deflated phasor.
  constexpr int kScan = 4096;
  double f_est = 0.0, best_mag = -1.0;
  for (int k = -kScan; k <= kScan; ++k) {
    const double f = f_nyq * k / kScan;
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += tone[j] * std::exp(std::complex<double>(0.0, -kTwoPi * f * t[j] * 1e-3));
    const double mag = std::abs(acc);
    if (mag > best_mag) {
      best_mag = mag;
      f_est = f;
    }
  }
  if (std::abs(f_est) > 0.95 * f_nyq)
    throw GridTooCoarseError(
        "fit_zi: dominant winding rate sits at the grid Nyquist frequency (" +
        format_double(f_est) + " MHz); densify the duration grid");

  // Unwrap arg(tone) guided by the estimate, then fit a weighted line.
  std::vector<double> phase(n, 0.0);
  bool have_prev = false;
  double prev_arg = 0.0, prev_phase = 0.0, prev_t = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (weight[j] <= 0.0) continue;
    const double raw = std::arg(tone[j]);
    if (!have_prev) {
      phase[j] = raw;
      have_prev = true;
    } else {
      const double predicted = kTwoPi * f_est * (t[j] - prev_t) * 1e-3;
      double delta = raw - prev_arg;
      delta -= kTwoPi * std::round((delta - predicted) / kTwoPi);
      phase[j] = prev_phase + delta;
    }
    prev_arg = raw;
    prev_phase = phase[j];
    prev_t = t[j];
  }

  double sw = 0, swt = 0, swtt = 0, swp = 0, swtp = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = weight[j];
    sw += w;
    swt += w * t[j];
    swtt += w * t[j] * t[j];
    swp += w * phase[j];
    swtp += w * t[j] * phase[j];
  }
  const double denom = sw * swtt - swt * swt;
  if (sw <= 0.0 || std::abs(denom) < 1e-30)
    throw std::invalid_argument("fit_zi: phasor signal carries no usable phase information");
  const double slope = (sw * swtp - swt * swp) / denom;  // rad per ns
  const double intercept = (swp * swtt - swt * swtp) / denom;
  detail.f_zi_mhz = slope / kTwoPi * 1e3;

  double rss = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = phase[j] - (intercept + slope * t[j]);
    rss += weight[j] * r * r;
  }
  detail.phase_residual_rms = std::sqrt(rss / sw);

  // With a bare (zero) envelope the conditional-dynamics modulation stays in
  // the residual, so the bar sits at a fraction of a radian rather than at
  // numerical zero.
  const double threshold = options.residual_threshold > 0.0
                               ? options.residual_threshold
                               : 0.2 + (sx->shots > 0 ? 5.0 / std::sqrt(sx->shots) : 0.0);
  detail.converged = detail.phase_residual_rms <= threshold;
  return detail;
}

ZiFitDetail fit_zi_detailed(std::span<const TomographySeries> series,
                            const FitOptions& options) {
  return fit_zi_detailed(series, CRCoefficients{}, options);
}

double fit_zi(std::span<const TomographySeries> series, const FitOptions& options) {
  return fit_zi_detailed(series, options).f_zi_mhz;
}

double fit_zi(std::span<const TomographySeries> series, const CRCoefficients& envelope,
              const FitOptions& options) {
  return fit_zi_detailed(series, envelope, options).f_zi_mhz;
}

void write_series_csv(const std::filesystem::path& path,
                      std::span<const TomographySeries> series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write series file: " + path.string());
  out << "duration_ns,control_state,basis,value,shots\n";
  for (const auto& s : series) {
    if (s.values.size() != s.durations_ns.size())
      throw std::invalid_argument("write_series_csv: series length mismatch");
    for (std::size_t j = 0; j < s.values.size(); ++j)
      out << format_double(s.durations_ns[j]) << "," << s.control_state << "," << s.basis
          << "," << format_double(s.values[j]) << "," << s.shots << "\n";
  }
}

std::vector<TomographySeries> read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series file: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path.filename().string(), 1, "missing header row");

  std::vector<TomographySeries> out;
  auto series_for = [&out](int control, char basis, int shots) -> TomographySeries& {
    for (auto& s : out)
      if (s.control_state == control && s.basis == basis) return s;
    TomographySeries s;
    s.control_state = control;
    s.basis = basis;
    s.shots = shots;
    out.push_back(std::move(s));
    return out.back();
  };

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<std::string, 5> fields;
    std::size_t start = 0;
    for (int f = 0; f < 5; ++f) {
      const std::size_t comma = line.find(',', start);
      if (f < 4 && comma == std::string::npos)
        throw ParseError(path.filename().string(), line_no, "expected 5 comma-separated fields");
      fields[f] = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                : comma - start);
      start = comma + 1;
    }
    const std::string source = path.filename().string();
    const double t = parse_double(fields[0], source + ":" + std::to_string(line_no));
    const long long control = parse_integer(fields[1], source + ":" + std::to_string(line_no));
    if (fields[2].size() != 1 || (fields[2][0] != 'X' && fields[2][0] != 'Y' && fields[2][0] != 'Z'))
      throw ParseError(source, line_no, "basis must be X, Y or Z");
    const double value = parse_double(fields[3], source + ":" + std::to_string(line_no));
    const long long shots = parse_integer(fields[4], source + ":" + std::to_string(line_no));
    if (control != 0 && control != 1) throw ParseError(source, line_no, "control_state must be 0 or 1");

    TomographySeries& s = series_for(static_cast<int>(control), fields[2][0],
                                     static_cast<int>(shots));
    s.durations_ns.push_back(t);
    s.values.push_back(value);
  }
  if (out.empty()) throw ParseError(path.filename().string(), line_no, "no data rows");
  return out;
}

}  // namespace crsim
