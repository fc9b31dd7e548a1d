#include "isac/baselines.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "isac/array.hpp"
#include "isac/constants.hpp"
#include "isac/sensing.hpp"
#include "isac/tracking.hpp"

namespace isac {

namespace {

double clamp_angle(double phi) {
  const double lo = 1e-3;
  const double hi = kPi - 1e-3;
  return phi < lo ? lo : (phi > hi ? hi : phi);
}

}  // namespace

RunLog run_ekf_point(const SimConfig& cfg, RandomStream& rng) {
  if (cfg.scatterer_count < 2) {
    throw std::invalid_argument("run_ekf_point: needs K >= 2 (a non-CR scatterer)");
  }
  const GroundTruth truth = generate_trajectory(cfg, rng);
  const Eigen::Vector3d q_w = process_noise_diag(cfg);
  const int n_fixed = cfg.n_t_narrow;

  int j = cfg.ekf_point_scatterer;
  if (j < 0 || j >= cfg.scatterer_count) {
    j = static_cast<int>(rng.uniform() * cfg.scatterer_count);
    if (j >= cfg.scatterer_count) j = cfg.scatterer_count - 1;
  }

  auto scatterer_state = [&](int n) {
    const ScattererTruth& s = truth.at(n).scatterers[static_cast<std::size_t>(j)];
    return StateVector{s.angle, s.range, cfg.speed};
  };

  EkfState est = initial_state(scatterer_state(0), cfg, rng);
  RunLog log;
  log.reserve(static_cast<std::size_t>(truth.epochs() - 1));

  for (int n = 1; n < truth.epochs(); ++n) {
    const EpochTruth& t = truth.at(n);
    const ScattererTruth& s = t.scatterers[static_cast<std::size_t>(j)];

    EkfState pred = ekf_predict(est, q_w, cfg.delta_t);
    pred.x.phi = clamp_angle(pred.x.phi);
    if (pred.x.d < 1e-6) pred.x.d = 1e-6;
    const BeamConfig beam{n_fixed, pred.x.phi};

    EpochRecord rec;
    rec.epoch = n;
    rec.time = n * cfg.delta_t;
    rec.truth = t.cr;
    rec.pred = pred.x;
    rec.n_t = n_fixed;
    rec.rho = 1.0;
    rec.phi_meas = std::numeric_limits<double>::quiet_NaN();

    const double half_bw = kHpbwHalf / (n_fixed * std::sin(beam.steer_angle));
    const double gain =
        std::abs(beam_gain(s.angle, beam.steer_angle, n_fixed));
    const bool visible =
        std::abs(s.angle - beam.steer_angle) <= half_bw && gain >= kBeamNullFloor;

    if (visible) {
      CrMeasurement y;
      if (cfg.zero_noise) {
        y.phi_hat = s.angle;
        y.d_hat = s.range;
        const double c = std::cos(s.angle);
        y.v_hat = std::abs(c) > 1e-12
                      ? kSpeedOfLight * s.doppler / (2.0 * cfg.carrier_freq * c)
                      : pred.x.v;
        y.var_phi = y.var_d = y.var_v = 0.0;
      } else {
        const double beta = std::abs(s.rcs) / ((2.0 * s.range) * (2.0 * s.range));
        const auto vv =
            measurement_variances(beta * beta, gain * gain, beam, cfg, 1.0);
        y.phi_hat = s.angle + std::sqrt(vv.angle) * rng.normal();
        y.d_hat = s.range + std::sqrt(vv.range) * rng.normal();
        const double mu_hat = s.doppler + std::sqrt(vv.doppler) * rng.normal();
        y.var_phi = vv.angle;
        y.var_d = vv.range;
        const double c = std::cos(y.phi_hat);
        const double vel_scale = kSpeedOfLight / (2.0 * cfg.carrier_freq);
        if (std::abs(c) < 1e-9) {
          // Broadside: a single Doppler carries no speed information.
          y.v_hat = pred.x.v;
          y.var_v = 1e30;
        } else {
          y.v_hat = vel_scale * mu_hat / c;
          y.var_v = vel_scale * vel_scale * vv.doppler / (c * c);
        }
      }
      est = ekf_update(pred, y, cfg.joseph_update);
      est.x.phi = clamp_angle(est.x.phi);
      rec.phi_meas = y.phi_hat;
    } else {
      est = pred;
      rec.coasted = true;
    }
    rec.est = est.x;

    const StateVector st = scatterer_state(n);
    const Eigen::Vector3d err(est.x.phi - st.phi, est.x.d - st.d, est.x.v - st.v);
    if (!rec.coasted && est.m.diagonal().minCoeff() > 1e-30) {
      rec.nees = err.dot(est.m.inverse() * err);
    }

    // Rate against the true CR through the scatterer-pointed pencil beam.
    const double g_cr = std::abs(beam_gain(t.cr.phi, beam.steer_angle, n_fixed));
    const double alpha_sq = (cfg.alpha_ref / t.cr.d) * (cfg.alpha_ref / t.cr.d);
    const double rate = achievable_rate(cfg.tx_power * alpha_sq * n_fixed * g_cr * g_cr /
                                        cfg.comm_noise_var);
    rec.r_wide = rate;
    rec.r_opt = rate;
    rec.r_obj = rate;
    log.push_back(rec);
  }
  return log;
}

namespace {

// Noiseless amplitude-comparison ratio of the probe pair for a target offset
// delta from the current estimate. Monotone increasing over the inversion
// window used below.
double abp_ratio_model(double phi_ref, double offset, double probe, int n) {
  const double target = clamp_angle(phi_ref + offset);
  const double gp = std::abs(beam_gain(target, clamp_angle(phi_ref + probe), n));
  const double gm = std::abs(beam_gain(target, clamp_angle(phi_ref - probe), n));
  const double pp = gp * gp;
  const double pm = gm * gm;
  const double sum = pp + pm;
  return sum > 0.0 ? (pp - pm) / sum : 0.0;
}

}  // namespace

RunLog run_abp(const SimConfig& cfg, RandomStream& rng) {
  const GroundTruth truth = generate_trajectory(cfg, rng);
  const int n_fixed = cfg.n_t_narrow;
  const double pilot_amp = std::sqrt(cfg.tx_power * cfg.abp_pilot_gain);
  const double noise_std = std::sqrt(cfg.comm_noise_var / 2.0);

  double phi_hat = truth.at(0).cr.phi;
  if (!cfg.zero_noise) {
    phi_hat += cfg.init_scale * cfg.process_std_phi_rad() * rng.normal();
  }
  phi_hat = clamp_angle(phi_hat);

  RunLog log;
  log.reserve(static_cast<std::size_t>(truth.epochs() - 1));

  for (int n = 1; n < truth.epochs(); ++n) {
    const EpochTruth& t = truth.at(n);

    EpochRecord rec;
    rec.epoch = n;
    rec.time = n * cfg.delta_t;
    rec.truth = t.cr;
    rec.pred = {phi_hat, t.cr.d, t.cr.v};
    rec.n_t = n_fixed;
    rec.rho = 1.0;
    rec.phi_meas = std::numeric_limits<double>::quiet_NaN();

    // Probe pair at +/- the half-power half-beamwidth; this is also the
    // invertible window of the ratio curve, and stays inside the configured
    // half search range.
    const double delta_b =
        std::min(kHpbwHalf / (n_fixed * std::sin(phi_hat)), cfg.abp_half_search);
    const double alpha = cfg.alpha_ref / t.cr.d;
    const double kappa_c = std::sqrt(static_cast<double>(n_fixed));

    double ratio;
    {
      const std::complex<double> sp = pilot_amp * alpha * kappa_c *
                                      beam_gain(t.cr.phi, clamp_angle(phi_hat + delta_b),
                                                n_fixed);
      const std::complex<double> sm = pilot_amp * alpha * kappa_c *
                                      beam_gain(t.cr.phi, clamp_angle(phi_hat - delta_b),
                                                n_fixed);
      std::complex<double> yp = sp;
      std::complex<double> ym = sm;
      if (!cfg.zero_noise) {
        yp += std::complex<double>(noise_std * rng.normal(), noise_std * rng.normal());
        ym += std::complex<double>(noise_std * rng.normal(), noise_std * rng.normal());
      }
      const double pp = std::norm(yp);
      const double pm = std::norm(ym);
      const double sum = pp + pm;
      ratio = sum > 0.0 ? (pp - pm) / sum : 0.0;
    }

    // Invert the monotone ratio curve over [-delta_b, delta_b]; saturate when
    // the observed ratio falls outside it.
    double step;
    const double r_hi = abp_ratio_model(phi_hat, delta_b, delta_b, n_fixed);
    const double r_lo = abp_ratio_model(phi_hat, -delta_b, delta_b, n_fixed);
    if (ratio >= r_hi) {
      step = delta_b;
    } else if (ratio <= r_lo) {
      step = -delta_b;
    } else {
      double lo = -delta_b;
      double hi = delta_b;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (abp_ratio_model(phi_hat, mid, delta_b, n_fixed) < ratio) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      step = 0.5 * (lo + hi);
    }
    if (step > cfg.abp_half_search) step = cfg.abp_half_search;
    if (step < -cfg.abp_half_search) step = -cfg.abp_half_search;
    phi_hat = clamp_angle(phi_hat + step);

    rec.est = {phi_hat, t.cr.d, t.cr.v};
    rec.aligned = std::abs(phi_hat - t.cr.phi) <
                  kHpbwHalf / (n_fixed * std::sin(clamp_angle(t.cr.phi)));

    const double g = std::abs(beam_gain(t.cr.phi, phi_hat, n_fixed));
    const double rate = achievable_rate(cfg.tx_power * alpha * alpha * n_fixed * g * g /
                                        cfg.comm_noise_var);
    rec.r_wide = rate;
    rec.r_opt = rate;
    rec.r_obj = rate;
    log.push_back(rec);
  }
  return log;
}

}  // namespace isac
