#pragma once

#include "isac/config.hpp"
#include "isac/metrics.hpp"
#include "isac/rng.hpp"

namespace isac {

/// Scalar time-splitting problem for one epoch:
///   maximize f(rho) = rho u + (1 - rho) erf(sqrt(rho) v) w  over 0 < rho <= 1
/// with u the wide-beam rate, w the narrow-beam rate (both under the
/// unit-gain approximation) and v = delta_n / (sqrt(2) sigma_phi) coupling
/// the sensing duty to the narrow beam's alignment probability.
struct RhoProblem {
  double u = 0.0;  // wide-beam rate term [bits/s/Hz]
  double v = 0.0;  // delta_n / (sqrt(2) sigma_phi), dimensionless
  double w = 0.0;  // narrow-beam rate term [bits/s/Hz]
};

/// Half-beamwidth of the fixed narrow beam at the predicted angle:
/// 0.89 / (N^narrow sin(phi)).
double narrow_halfbeamwidth(int n_narrow, double phi_pred);

/// Probability that the estimated angle falls inside the narrow beam:
/// erf(sqrt(rho / 2) * delta / sigma_phi).
double alignment_probability(double delta, double sigma_phi, double rho);

/// f(rho) = rho u + (1 - rho) erf(sqrt(rho) v) w.
double objective(double rho, const RhoProblem& p);

/// f'(rho) = u + (w v / sqrt(pi)) (rho^-1/2 - rho^1/2) e^{-rho v^2}
///           - w erf(sqrt(rho) v).
double objective_derivative(double rho, const RhoProblem& p);

/// KKT solution of the concave problem: 1 when f'(1) >= 0, otherwise the
/// unique root of f' in (0, 1), found by bisection on the strictly
/// decreasing derivative (|f'| < 1e-10 or bracket < 1e-12).
double optimize_rho(const RhoProblem& p);

/// Two-stage tracking loop: per epoch, size the wide beam at the predicted
/// state, solve the time split, sense with duty rho (matched-filter gain
/// scaled by rho), update the filter, then steer the fixed narrow beam at
/// the posterior estimate. Logs both the realized rate and the optimizer's
/// objective value.
RunLog run_isac_ab(const SimConfig& cfg, RandomStream& rng);

}  // namespace isac
