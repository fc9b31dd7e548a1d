#include "isac/tracking.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isac/array.hpp"
#include "isac/constants.hpp"
#include "isac/uncertainty.hpp"

namespace isac {

Eigen::Matrix3d jacobian_h(const StateVector& x, double delta_t) {
  if (x.d <= 0.0) throw std::invalid_argument("jacobian_h: d must be > 0");
  const double s = std::sin(x.phi);
  const double c = std::cos(x.phi);
  Eigen::Matrix3d h;
  h << 1.0 + x.v * delta_t * c / x.d, -x.v * delta_t * s / (x.d * x.d), delta_t * s / x.d,
       x.v * delta_t * s,             1.0,                              -delta_t * c,
       0.0,                           0.0,                              1.0;
  return h;
}

Eigen::Vector3d process_noise_diag(const SimConfig& cfg) {
  if (cfg.zero_noise) return Eigen::Vector3d::Zero();
  const double sp = cfg.process_std_phi_rad();
  return {sp * sp, cfg.process_std_d * cfg.process_std_d,
          cfg.process_std_v * cfg.process_std_v};
}

namespace {

void symmetrize(Eigen::Matrix3d& m) { m = 0.5 * (m + m.transpose()).eval(); }

}  // namespace

EkfState ekf_predict(const EkfState& s, const Eigen::Vector3d& q_w, double delta_t) {
  EkfState out;
  out.x = evolve_state(s.x, delta_t);
  const Eigen::Matrix3d h = jacobian_h(s.x, delta_t);
  out.m = h * s.m * h.transpose();
  out.m += q_w.asDiagonal();
  symmetrize(out.m);
  return out;
}

EkfState ekf_update(const EkfState& pred, const CrMeasurement& y, bool joseph) {
  const Eigen::Vector3d q_z(y.var_phi, y.var_d, y.var_v);
  Eigen::Matrix3d s = pred.m;
  s += q_z.asDiagonal();

  EkfState out;
  const Eigen::Vector3d innovation(y.phi_hat - pred.x.phi, y.d_hat - pred.x.d,
                                   y.v_hat - pred.x.v);
  if (s.diagonal().minCoeff() < 1e-30) {
    // Exact-measurement limit: zero measurement noise carries infinite
    // information, so the update adopts the measurement outright.
    out.x.phi = y.phi_hat;
    out.x.d = y.d_hat;
    out.x.v = y.v_hat;
    out.m = Eigen::Matrix3d::Zero();
    return out;
  }
  const Eigen::Matrix3d k = pred.m * s.inverse();
  const Eigen::Vector3d corrected =
      Eigen::Vector3d(pred.x.phi, pred.x.d, pred.x.v) + k * innovation;
  out.x.phi = corrected(0);
  out.x.d = corrected(1);
  out.x.v = corrected(2);
  const Eigen::Matrix3d imk = Eigen::Matrix3d::Identity() - k;
  if (joseph) {
    out.m = imk * pred.m * imk.transpose();
    out.m += (k * q_z.asDiagonal() * k.transpose()).eval();
  } else {
    out.m = imk * pred.m;
  }
  symmetrize(out.m);
  return out;
}

EkfState initial_state(const StateVector& truth0, const SimConfig& cfg,
                       RandomStream& rng) {
  const double scale = cfg.zero_noise ? 0.0 : cfg.init_scale;
  const Eigen::Vector3d stds(scale * cfg.process_std_phi_rad(),
                             scale * cfg.process_std_d, scale * cfg.process_std_v);
  EkfState s;
  s.x.phi = truth0.phi + stds(0) * (scale > 0.0 ? rng.normal() : 0.0);
  s.x.d = truth0.d + stds(1) * (scale > 0.0 ? rng.normal() : 0.0);
  s.x.v = truth0.v + stds(2) * (scale > 0.0 ? rng.normal() : 0.0);
  s.m = Eigen::Vector3d(stds.array().square()).asDiagonal();
  return s;
}

namespace {

double clamp_angle(double phi) {
  const double lo = 1e-6;
  const double hi = kPi - 1e-6;
  return phi < lo ? lo : (phi > hi ? hi : phi);
}

}  // namespace

SensingOutcome sense_cr(const EpochTruth& truth, const VehicleGeometry& geom,
                        const BeamConfig& beam, const SimConfig& cfg, double rho,
                        RandomStream& rng) {
  SensingOutcome out;
  out.meas = synthesize_measurements(truth, geom, beam, cfg, rho, rng);
  if (out.meas.empty()) return out;

  const ScattererStack stack = make_stack(out.meas);
  const Vec2 eff = effective_cr_offsets(out.meas, geom);
  const double var_phi = angle_variance_approx(stack, eff.x, eff.y);
  const double var_d = distance_variance_approx(stack, eff.x, eff.y);

  std::vector<double> var_mu;
  var_mu.reserve(out.meas.size());
  for (const auto& m : out.meas) var_mu.push_back(m.var_mu);

  double v_hat = 0.0;
  double var_v = 0.0;
  double den = 0.0;
  for (const auto& m : out.meas) {
    const double w = m.var_mu > 0.0 ? 1.0 / m.var_mu : 1.0;
    const double c = std::cos(m.theta_hat);
    den += w * c * c;
  }
  if (den < 1e-12) {
    // All scatterers near broadside: the Doppler set carries no speed
    // information this epoch; report an uninformative velocity channel.
    var_v = 1e30;
  } else {
    v_hat = mle_velocity(out.meas, cfg.carrier_freq);
    var_v = velocity_variance_approx(stack.theta, var_mu, cfg.carrier_freq);
  }

  const Vec2 fused = fuse_centroid(out.meas);
  out.y = cr_measurement(fused, v_hat, eff, var_phi, var_d, var_v);
  out.valid = true;
  return out;
}

RunLog run_isac_db(const SimConfig& cfg, RandomStream& rng) {
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

    EpochRecord rec;
    rec.epoch = n;
    rec.time = n * cfg.delta_t;
    rec.truth = t.cr;
    rec.pred = pred.x;
    rec.n_t = n_t;
    rec.rho = 1.0;

    const SensingOutcome so = sense_cr(t, truth.geometry(), beam, cfg, 1.0, rng);
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
                                              pred.x.phi, n_t, cfg);
    rec.r_wide = rc.wide;
    rec.r_narrow = 0.0;
    rec.r_opt = rc.wide;
    rec.r_obj = rc.wide;
    log.push_back(rec);
  }
  return log;
}

}  // namespace isac
