#pragma once

#include <Eigen/Dense>

#include "isac/config.hpp"
#include "isac/metrics.hpp"
#include "isac/rng.hpp"
#include "isac/scenario.hpp"
#include "isac/sensing.hpp"

namespace isac {

/// Filter state: estimate plus its 3x3 MSE matrix (kept symmetric).
struct EkfState {
  StateVector x;
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
};

/// Jacobian of the state evolution at x:
///   [ 1 + v dT cos(phi)/d   -v dT sin(phi)/d^2   dT sin(phi)/d ]
///   [ v dT sin(phi)          1                   -dT cos(phi)  ]
///   [ 0                      0                    1            ]
Eigen::Matrix3d jacobian_h(const StateVector& x, double delta_t);

/// Per-epoch process noise variances diag(sigma_phi_bar^2, sigma_d_bar^2,
/// sigma_v_bar^2); all zero in zero-noise mode.
Eigen::Vector3d process_noise_diag(const SimConfig& cfg);

/// Prediction step: x' = h(x), M' = H M H^T + Q_w with H linearized at x.
EkfState ekf_predict(const EkfState& s, const Eigen::Vector3d& q_w, double delta_t);

/// Update step: K = M (M + Q_z)^{-1}, x^ = x + K(y - x), M = (I - K) M.
/// A singular innovation covariance (all-zero measurement noise with a
/// collapsed prior) resolves to the exact-measurement limit K = I.
/// joseph selects the Joseph-form covariance update.
EkfState ekf_update(const EkfState& pred, const CrMeasurement& y, bool joseph = false);

/// Initial track: truth perturbed by init_scale * process std per axis, with
/// a matching diagonal MSE matrix.
EkfState initial_state(const StateVector& truth0, const SimConfig& cfg,
                       RandomStream& rng);

/// One sensing pass: synthesize the resolved set for the given beam and duty,
/// fuse it into a CR measurement with approximated variances. valid == false
/// means nothing was resolved (track-coast).
struct SensingOutcome {
  ScattererMeasurementSet meas;
  bool valid = false;
  CrMeasurement y;
};
SensingOutcome sense_cr(const EpochTruth& truth, const VehicleGeometry& geom,
                        const BeamConfig& beam, const SimConfig& cfg, double rho,
                        RandomStream& rng);

/// Dynamic-beamwidth single-beam tracking loop: per epoch, predict, size the
/// wide beam to cover the vehicle at the predicted state, measure, update,
/// and log the realized rate of the prediction-steered beam.
RunLog run_isac_db(const SimConfig& cfg, RandomStream& rng);

}  // namespace isac
