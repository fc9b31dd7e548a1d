#pragma once

#include <Eigen/Dense>
#include <complex>

namespace isac {

/// Unit-norm ULA steering vector for half-wavelength spacing:
/// element m = (1/sqrt(N)) exp(-j pi m cos(theta)), m = 0..N-1.
Eigen::VectorXcd steering_vector(double theta, int n);

/// Beamforming gain factor a^H(theta) a(phi), evaluated in closed
/// Dirichlet-kernel form. |result| = 1 iff cos(theta) = cos(phi).
std::complex<double> beam_gain(double theta, double phi, int n);

/// Half-power beamwidth of an N-element ULA steered to phi: 1.78/(N sin phi).
double half_power_beamwidth(int n, double phi);

/// Ground footprint of the half-power beam at range d:
/// 2 d tan(0.89 / (N sin phi)).
double coverage_width(double d, double phi, int n);

/// Transmit antenna count that keeps the half-power footprint at least
/// delta_d wide at the predicted range/angle, capped at n_max and floored
/// at 1: min(floor(0.89 / (atan(delta_d / 2d) sin(phi))), n_max).
int antennas_for_coverage(double d_pred, double phi_pred, double delta_d, int n_max);

/// Transmit beam: antenna count plus steering angle.
struct BeamConfig {
  int n_antennas = 1;
  double steer_angle = 0.0;  // [rad]

  /// Sensing array gain factor sqrt(N_t N_r).
  double kappa(int n_r) const {
    return std::sqrt(static_cast<double>(n_antennas) * n_r);
  }
  /// Communication array gain factor sqrt(N_t).
  double kappa_c() const { return std::sqrt(static_cast<double>(n_antennas)); }
};

}  // namespace isac
