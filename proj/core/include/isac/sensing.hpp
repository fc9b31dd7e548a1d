#pragma once

#include <span>
#include <vector>

#include "isac/array.hpp"
#include "isac/config.hpp"
#include "isac/rng.hpp"
#include "isac/scenario.hpp"

namespace isac {

/// One resolved scatterer's post-matched-filter measurement.
///
/// Association is assumed known, so each entry carries the body-frame offset
/// of the scatterer it came from (power-weighted mean offset for merged
/// groups). Variances are the true values of the synthesis model; the
/// tracker consumes them as known per-scatterer noise levels.
struct ScattererMeasurement {
  double theta_hat = 0.0;  // measured angle [rad]
  double d_hat = 0.0;      // measured range [m]
  double mu_hat = 0.0;     // measured Doppler [Hz]
  double var_theta = 0.0;  // sigma^2(1) [rad^2]
  double var_d = 0.0;      // sigma^2(2) [m^2]
  double var_mu = 0.0;     // sigma^2(3) [Hz^2]
  double beta_mag = 0.0;   // |beta|, reflection coefficient magnitude
  double gain_mag = 0.0;   // |rho_k|, beamforming gain factor at the scatterer
  double offset_x = 0.0;   // known body-frame offset [m]
  double offset_y = 0.0;
};

using ScattererMeasurementSet = std::vector<ScattererMeasurement>;

/// Fused CR-level measurement with its (diagonal) covariance.
struct CrMeasurement {
  double phi_hat = 0.0;
  double d_hat = 0.0;
  double v_hat = 0.0;
  double var_phi = 0.0;
  double var_d = 0.0;
  double var_v = 0.0;
};

struct MeasurementVariances {
  double angle = 0.0;    // sigma^2(1)
  double range = 0.0;    // sigma^2(2)
  double doppler = 0.0;  // sigma^2(3)
};

/// Scatterers with beamforming gain below this are treated as unilluminated
/// (their measurement variances diverge) and dropped from the resolved set.
inline constexpr double kBeamNullFloor = 1e-6;

/// Per-scatterer measurement variances, inversely proportional to the
/// post-matched-filter SNR:
///   sigma^2(i) = a_i^2 sigma^2 / (p (rho G) kappa^2 |beta|^2 |gain|^2).
/// rho scales the matched-filter gain for a sensing stage of duty rho.
/// Throws std::domain_error when the echo power is below the null floor.
MeasurementVariances measurement_variances(double beta_sq, double gain_sq,
                                           const BeamConfig& beam,
                                           const SimConfig& cfg, double rho);

/// Groups indices by range/Doppler separability: two entries are separable
/// when they differ by more than delta_r in range OR more than delta_mu in
/// Doppler; connected inseparable components form one group each.
std::vector<std::vector<int>> check_separability(std::span<const double> ranges,
                                                 std::span<const double> dopplers,
                                                 double delta_r, double delta_mu);

/// Synthesizes the epoch's resolved measurement set for a beam of duty rho
/// steered at beam.steer_angle:
///  - scatterers outside the half-power beamwidth (or on a beam null) drop out,
///  - inseparable survivors merge into power-weighted effective scatterers
///    (iterated to a fixed point),
///  - each resolved entry gets independent Gaussian angle/range/Doppler noise
///    with variances from measurement_variances.
/// Returns an empty set when nothing survives (track-coast signal).
ScattererMeasurementSet synthesize_measurements(const EpochTruth& truth,
                                                const VehicleGeometry& geom,
                                                const BeamConfig& beam,
                                                const SimConfig& cfg, double rho,
                                                RandomStream& rng);

/// Mean of the measured scatterer positions:
///   x = (1/K) sum d_k cos(theta_k), y = (1/K) sum d_k sin(theta_k).
/// Equals the vehicle centroid estimate when the full set is resolved.
Vec2 fuse_centroid(const ScattererMeasurementSet& meas);

/// Offsets that take the fused position mean to the CR: the configured CR
/// offset corrected by the mean body-frame offset of the resolved subset
/// (exactly (delta_x, delta_y) when all scatterers are resolved).
Vec2 effective_cr_offsets(const ScattererMeasurementSet& meas,
                          const VehicleGeometry& geom);

/// Weighted MLE of the vehicle speed from measured Dopplers and angles:
///   v = (c / 2 f_c) [sum mu_k cos(theta_k)/s_k] / [sum cos^2(theta_k)/s_k].
/// Throws std::domain_error when the weighted cos^2 mass is below 1e-12.
double mle_velocity(const ScattererMeasurementSet& meas, double carrier_freq);

/// Assembles the CR measurement from the fused position mean, the velocity
/// estimate and the approximated variances:
///   phi = atan2(y + dy_eff, x + dx_eff) (branch-corrected into (0, pi)),
///   d   = hypot(x + dx_eff, y + dy_eff).
/// Throws std::domain_error at the coordinate singularity.
CrMeasurement cr_measurement(const Vec2& fused, double v_hat, const Vec2& eff_offsets,
                             double var_phi, double var_d, double var_v);

}  // namespace isac
