#pragma once

#include <span>
#include <vector>

#include "isac/sensing.hpp"

namespace isac {

/// Stacked per-scatterer angle/range measurements with their diagonal
/// covariance, the operating point for the first-order variance propagation.
struct ScattererStack {
  std::vector<double> theta;      // measured angles [rad]
  std::vector<double> range;      // measured ranges [m]
  std::vector<double> var_theta;  // sigma^2(1) per scatterer
  std::vector<double> var_range;  // sigma^2(2) per scatterer

  int size() const { return static_cast<int>(theta.size()); }
};

/// Builds the stack from a resolved measurement set.
ScattererStack make_stack(const ScattererMeasurementSet& meas);

/// First-order propagation of the stacked covariance through the fused CR
/// angle: builds the Jacobian row G of
///   phi = atan2(mean(d sin theta) + dy, mean(d cos theta) + dx)
/// with entries
///   dphi/dtheta_k = d_k (cos theta_k DX + sin theta_k DY) / (DX^2 + DY^2)
///   dphi/dd_k     = (sin theta_k DX - cos theta_k DY) / (DX^2 + DY^2)
/// where DX = sum d cos theta + K dx, DY = sum d sin theta + K dy, and
/// returns G Sigma G^T. Throws std::domain_error when DX = DY = 0.
double angle_variance_approx(const ScattererStack& stack, double dx, double dy);

/// Same propagation for the fused CR range, with
///   dd/dtheta_k = d_k (-sin theta_k DX + cos theta_k DY) / (K sqrt(DX^2+DY^2))
///   dd/dd_k     = (cos theta_k DX + sin theta_k DY) / (K sqrt(DX^2+DY^2)).
double distance_variance_approx(const ScattererStack& stack, double dx, double dy);

/// Coarse variance of the Doppler-MLE speed estimate:
///   sigma_v^2 = 1 / sum_k (2 f_c cos theta_k / c)^2 / s_k.
/// Returns 0 when any Doppler variance is zero (exact measurements); throws
/// std::domain_error on degenerate geometry.
double velocity_variance_approx(std::span<const double> theta_hat,
                                std::span<const double> var_mu, double carrier_freq);

/// Jacobian rows used by the approximations, exposed for validation.
struct FusionJacobians {
  std::vector<double> angle;     // length 2K: d phi / d theta_k, d phi / d d_k
  std::vector<double> distance;  // length 2K: d d / d theta_k, d d / d d_k
};
FusionJacobians fusion_jacobians(const ScattererStack& stack, double dx, double dy);

}  // namespace isac
