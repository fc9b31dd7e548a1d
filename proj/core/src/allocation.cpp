#include "isac/allocation.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "isac/array.hpp"
#include "isac/constants.hpp"
#include "isac/tracking.hpp"
#include "isac/uncertainty.hpp"

namespace isac {

namespace {

void check_problem(const RhoProblem& p) {
  if (!(p.u > 0.0 && p.v > 0.0 && p.w > 0.0)) {
    throw std::invalid_argument("RhoProblem: u, v, w must be > 0");
  }
}

void check_rho(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in (0, 1]");
  }
}

}  // namespace

double narrow_halfbeamwidth(int n_narrow, double phi_pred) {
  if (n_narrow < 1) throw std::invalid_argument("narrow_halfbeamwidth: N must be >= 1");
  const double s = std::sin(phi_pred);
  if (!(s > 0.0)) {
    throw std::invalid_argument("narrow_halfbeamwidth: sin(phi) must be > 0");
  }
  return kHpbwHalf / (n_narrow * s);
}

double alignment_probability(double delta, double sigma_phi, double rho) {
  check_rho(rho);
  if (!(sigma_phi > 0.0)) {
    throw std::invalid_argument("alignment_probability: sigma_phi must be > 0");
  }
  return std::erf(std::sqrt(rho / 2.0) * delta / sigma_phi);
}

double objective(double rho, const RhoProblem& p) {
  check_rho(rho);
  check_problem(p);
  return rho * p.u + (1.0 - rho) * std::erf(std::sqrt(rho) * p.v) * p.w;
}

double objective_derivative(double rho, const RhoProblem& p) {
  check_rho(rho);
  check_problem(p);
  const double sr = std::sqrt(rho);
  return p.u +
         (p.w * p.v / std::sqrt(kPi)) * (1.0 / sr - sr) * std::exp(-rho * p.v * p.v) -
         p.w * std::erf(sr * p.v);
}

double optimize_rho(const RhoProblem& p) {
  check_problem(p);
  if (objective_derivative(1.0, p) >= 0.0) return 1.0;

  // f' is strictly decreasing with f'(rho) -> +inf as rho -> 0+, so the root
  // is bracketed by [lo, 1].
  double lo = 1e-12;
  double hi = 1.0;
  if (objective_derivative(lo, p) <= 0.0) return lo;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double d = objective_derivative(mid, p);
    if (std::abs(d) < 1e-10) return mid;
    if (d > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

// Measurement-variance model at the predicted state: predicted scatterer
// geometry (known body offsets around the predicted CR), nominal unit RCS,
// full-duty matched filtering. Returns the propagated fused angle variance,
// or nothing if no scatterer would be illuminated.
std::optional<double> predicted_angle_variance(const StateVector& pred,
                                               const VehicleGeometry& geom,
                                               const BeamConfig& beam,
                                               const SimConfig& cfg) {
  const Vec2 cr_pos{pred.d * std::cos(pred.phi), pred.d * std::sin(pred.phi)};
  const Vec2 centroid{cr_pos.x - geom.cr_dx, cr_pos.y - geom.cr_dy};
  const double half_bw = kHpbwHalf / (beam.n_antennas * std::sin(beam.steer_angle));

  ScattererStack stack;
  Vec2 mean_off;
  for (const auto& off : geom.scatterer_offsets) {
    const double x = centroid.x + off.x;
    const double y = centroid.y + off.y;
    const double range = std::hypot(x, y);
    if (range < 1e-9) continue;
    const double angle = std::atan2(y, x);
    if (std::abs(angle - beam.steer_angle) > half_bw) continue;
    const double gain = std::abs(beam_gain(angle, beam.steer_angle, beam.n_antennas));
    if (gain < kBeamNullFloor) continue;
    const double beta = 1.0 / ((2.0 * range) * (2.0 * range));
    const auto v = measurement_variances(beta * beta, gain * gain, beam, cfg, 1.0);
    stack.theta.push_back(angle);
    stack.range.push_back(range);
    stack.var_theta.push_back(v.angle);
    stack.var_range.push_back(v.range);
    mean_off.x += off.x;
    mean_off.y += off.y;
  }
  if (stack.size() == 0) return std::nullopt;
  mean_off.x /= stack.size();
  mean_off.y /= stack.size();
  return angle_variance_approx(stack, geom.cr_dx - mean_off.x, geom.cr_dy - mean_off.y);
}

double clamp_angle(double phi) {
  const double lo = 1e-6;
  const double hi = kPi - 1e-6;
  return phi < lo ? lo : (phi > hi ? hi : phi);
}

}  // namespace

RunLog run_isac_ab(const SimConfig& cfg, RandomStream& rng) {
  const GroundTruth truth = generate_trajectory(cfg, rng);
  const Eigen::Vector3d q_w = process_noise_diag(cfg);

  EkfState est = initial_state(truth.at(0).cr, cfg, rng);
  RunLog log;
  log.reserve(static_cast<std::size_t>(truth.epochs() - 1));

  for (int n = 1; n < truth.epochs(); ++n) {
    const EpochTruth& t = truth.at(n);
    EkfState pred = ekf_predict(est, q_w, cfg.delta_t);
    pred.x.phi = clamp_angle(pred.x.phi);
    if (pred.x.d < 1e-6) pred.x.d = 1e-6;

    const int n_t =
        antennas_for_coverage(pred.x.d, pred.x.phi, cfg.coverage_width_m, cfg.n_t_max);
    const BeamConfig beam{n_t, pred.x.phi};
    const double delta_n = narrow_halfbeamwidth(cfg.n_t_narrow, pred.x.phi);

    // Steering-error scale for the alignment model: the filter's post-update
    // angle MSE at full sensing duty, from the predicted MSE and the
    // predicted-state measurement-variance model. Scaled by 1/rho inside the
    // objective through v.
    const auto r_phi = predicted_angle_variance(pred.x, truth.geometry(), beam, cfg);
    const double m_phi = pred.m(0, 0);
    double sigma_sq_opt = m_phi;
    if (r_phi && m_phi + *r_phi > 0.0) {
      sigma_sq_opt = m_phi * *r_phi / (m_phi + *r_phi);
    }
    const double sigma_opt = std::max(std::sqrt(std::max(sigma_sq_opt, 0.0)), 1e-9);

    const double alpha_sq = (cfg.alpha_ref / pred.x.d) * (cfg.alpha_ref / pred.x.d);
    RhoProblem prob;
    prob.u = achievable_rate(cfg.tx_power * alpha_sq * n_t / cfg.comm_noise_var);
    prob.w = achievable_rate(cfg.tx_power * alpha_sq * cfg.n_t_narrow / cfg.comm_noise_var);
    prob.v = delta_n / (std::sqrt(2.0) * sigma_opt);
    const double rho = optimize_rho(prob);

    EpochRecord rec;
    rec.epoch = n;
    rec.time = n * cfg.delta_t;
    rec.truth = t.cr;
    rec.pred = pred.x;
    rec.n_t = n_t;
    rec.rho = rho;

    const SensingOutcome so = sense_cr(t, truth.geometry(), beam, cfg, rho, rng);
    if (so.valid) {
      est = ekf_update(pred, so.y, cfg.joseph_update);
      est.x.phi = clamp_angle(est.x.phi);
      rec.phi_meas = so.y.phi_hat;
    } else {
      est = pred;
      rec.coasted = true;
      rec.phi_meas = std::numeric_limits<double>::quiet_NaN();
    }
    rec.est = est.x;

    const Eigen::Vector3d err(est.x.phi - t.cr.phi, est.x.d - t.cr.d, est.x.v - t.cr.v);
    if (!rec.coasted && est.m.diagonal().minCoeff() > 1e-30) {
      rec.nees = err.dot(est.m.inverse() * err);
    }

    const RateComponents rc = rate_components(t.cr.phi, t.cr.d, pred.x.phi, n_t,
                                              est.x.phi, cfg.n_t_narrow, cfg);
    rec.aligned = std::abs(est.x.phi - t.cr.phi) < delta_n;
    rec.r_wide = rc.wide;
    rec.r_narrow = rec.aligned ? rc.narrow_aligned : 0.0;
    rec.r_opt = rho * rec.r_wide + (1.0 - rho) * rec.r_narrow;
    rec.r_obj = rho * prob.u +
                (1.0 - rho) * alignment_probability(delta_n, sigma_opt, rho) * prob.w;
    log.push_back(rec);
  }
  return log;
}

}  // namespace isac
