#include "isac/array.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/constants.hpp"

namespace isac {

namespace {

void check_angle(double a, const char* what) {
  if (!(a > 0.0 && a < kPi)) {
    throw std::invalid_argument(std::string(what) + ": angle must lie in (0, pi)");
  }
}

}  // namespace

Eigen::VectorXcd steering_vector(double theta, int n) {
  check_angle(theta, "steering_vector");
  if (n < 1) throw std::invalid_argument("steering_vector: N must be >= 1");
  Eigen::VectorXcd a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double step = -kPi * std::cos(theta);
  for (int m = 0; m < n; ++m) {
    a(m) = std::polar(scale, step * m);
  }
  return a;
}

std::complex<double> beam_gain(double theta, double phi, int n) {
  check_angle(theta, "beam_gain");
  check_angle(phi, "beam_gain");
  if (n < 1) throw std::invalid_argument("beam_gain: N must be >= 1");
  // a^H(theta) a(phi) = (1/N) sum_m exp(j pi m u), u = cos(theta) - cos(phi)
  //                   = exp(j pi (N-1) u / 2) sin(N pi u / 2) / (N sin(pi u / 2)).
  const double u = std::cos(theta) - std::cos(phi);
  const double half = kPi * u / 2.0;
  const double denom = std::sin(half);
  const std::complex<double> phase = std::polar(1.0, (n - 1) * half);
  if (std::abs(denom) < 1e-15) {
    return phase;  // matched limit, modulus 1
  }
  return phase * (std::sin(n * half) / (n * denom));
}

double half_power_beamwidth(int n, double phi) {
  if (n < 1) throw std::invalid_argument("half_power_beamwidth: N must be >= 1");
  check_angle(phi, "half_power_beamwidth");
  return kHpbwFull / (n * std::sin(phi));
}

double coverage_width(double d, double phi, int n) {
  if (d <= 0.0) throw std::invalid_argument("coverage_width: d must be > 0");
  if (n < 1) throw std::invalid_argument("coverage_width: N must be >= 1");
  check_angle(phi, "coverage_width");
  return 2.0 * d * std::tan(kHpbwHalf / (n * std::sin(phi)));
}

int antennas_for_coverage(double d_pred, double phi_pred, double delta_d, int n_max) {
  if (d_pred <= 0.0) throw std::invalid_argument("antennas_for_coverage: d must be > 0");
  if (delta_d <= 0.0) throw std::invalid_argument("antennas_for_coverage: delta_d must be > 0");
  check_angle(phi_pred, "antennas_for_coverage");
  const double raw =
      kHpbwHalf / (std::atan(delta_d / (2.0 * d_pred)) * std::sin(phi_pred));
  int n = static_cast<int>(std::floor(raw));
  if (n < 1) n = 1;
  if (n > n_max) n = n_max;
  return n;
}

}  // namespace isac
