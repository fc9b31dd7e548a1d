#include "isac/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "isac/constants.hpp"

namespace isac {

MeasurementVariances measurement_variances(double beta_sq, double gain_sq,
                                           const BeamConfig& beam,
                                           const SimConfig& cfg, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("measurement_variances: rho must be in (0, 1]");
  }
  if (gain_sq < kBeamNullFloor * kBeamNullFloor) {
    throw std::domain_error("measurement_variances: scatterer on beam null, variance unbounded");
  }
  const double kappa_sq = static_cast<double>(beam.n_antennas) * cfg.n_r;
  const double denom =
      cfg.tx_power * (rho * cfg.matched_filter_gain) * kappa_sq * beta_sq * gain_sq;
  if (!(denom > 0.0)) {
    throw std::domain_error("measurement_variances: vanishing echo power");
  }
  MeasurementVariances out;
  out.angle = cfg.a1 * cfg.a1 * cfg.noise_var / denom;
  out.range = cfg.a2 * cfg.a2 * cfg.noise_var / denom;
  out.doppler = cfg.a3 * cfg.a3 * cfg.noise_var / denom;
  return out;
}

std::vector<std::vector<int>> check_separability(std::span<const double> ranges,
                                                 std::span<const double> dopplers,
                                                 double delta_r, double delta_mu) {
  const int n = static_cast<int>(ranges.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool separable = std::abs(ranges[static_cast<std::size_t>(i)] -
                                      ranges[static_cast<std::size_t>(j)]) > delta_r ||
                             std::abs(dopplers[static_cast<std::size_t>(i)] -
                                      dopplers[static_cast<std::size_t>(j)]) > delta_mu;
      if (!separable) {
        parent[static_cast<std::size_t>(find(i))] = find(j);
      }
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> root_to_group(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_to_group[static_cast<std::size_t>(r)] < 0) {
      root_to_group[static_cast<std::size_t>(r)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(root_to_group[static_cast<std::size_t>(r)])].push_back(i);
  }
  return groups;
}

namespace {

// Working representation of one (possibly merged) echo before the noise draw.
struct Echo {
  Vec2 pos;
  Vec2 offset;
  double range = 0.0;
  double angle = 0.0;
  double doppler = 0.0;
  double echo_power = 0.0;  // |beta|^2 |gain|^2, powers add across a merged group
  double beta_mag = 0.0;
  double gain_mag = 0.0;
};

Echo merge_group(const std::vector<Echo>& echoes, const std::vector<int>& group) {
  if (group.size() == 1) return echoes[static_cast<std::size_t>(group[0])];
  Echo m;
  double wsum = 0.0;
  for (int idx : group) {
    const Echo& e = echoes[static_cast<std::size_t>(idx)];
    const double w = e.echo_power;
    m.pos.x += w * e.pos.x;
    m.pos.y += w * e.pos.y;
    m.offset.x += w * e.offset.x;
    m.offset.y += w * e.offset.y;
    m.doppler += w * e.doppler;
    m.echo_power += e.echo_power;
    wsum += w;
  }
  m.pos.x /= wsum;
  m.pos.y /= wsum;
  m.offset.x /= wsum;
  m.offset.y /= wsum;
  m.doppler /= wsum;
  m.range = std::hypot(m.pos.x, m.pos.y);
  m.angle = std::atan2(m.pos.y, m.pos.x);
  m.beta_mag = std::sqrt(m.echo_power);  // combined power, gain folded in
  m.gain_mag = 1.0;
  return m;
}

}  // namespace

ScattererMeasurementSet synthesize_measurements(const EpochTruth& truth,
                                                const VehicleGeometry& geom,
                                                const BeamConfig& beam,
                                                const SimConfig& cfg, double rho,
                                                RandomStream& rng) {
  const double half_bw = kHpbwHalf / (beam.n_antennas * std::sin(beam.steer_angle));

  std::vector<Echo> echoes;
  echoes.reserve(truth.scatterers.size());
  for (std::size_t k = 0; k < truth.scatterers.size(); ++k) {
    const ScattererTruth& s = truth.scatterers[k];
    if (std::abs(s.angle - beam.steer_angle) > half_bw) continue;  // outside beam
    const double gain = std::abs(beam_gain(s.angle, beam.steer_angle, beam.n_antennas));
    if (gain < kBeamNullFloor) continue;  // beam null, unbounded variance
    Echo e;
    e.pos = s.pos;
    e.offset = geom.scatterer_offsets[k];
    e.range = s.range;
    e.angle = s.angle;
    e.doppler = s.doppler;
    e.beta_mag = std::abs(s.rcs) / ((2.0 * s.range) * (2.0 * s.range));
    e.gain_mag = gain;
    e.echo_power = e.beta_mag * e.beta_mag * gain * gain;
    if (e.echo_power < 1e-300) continue;  // fully faded, no detectable echo
    echoes.push_back(e);
  }

  // Merge inseparable groups until the set is pairwise separable.
  const double delta_r = cfg.range_resolution();
  const double delta_mu = cfg.doppler_resolution();
  for (;;) {
    std::vector<double> rr(echoes.size()), dd(echoes.size());
    for (std::size_t i = 0; i < echoes.size(); ++i) {
      rr[i] = echoes[i].range;
      dd[i] = echoes[i].doppler;
    }
    const auto groups = check_separability(rr, dd, delta_r, delta_mu);
    if (groups.size() == echoes.size()) break;
    std::vector<Echo> merged;
    merged.reserve(groups.size());
    for (const auto& g : groups) merged.push_back(merge_group(echoes, g));
    echoes = std::move(merged);
  }

  ScattererMeasurementSet out;
  out.reserve(echoes.size());
  for (const Echo& e : echoes) {
    ScattererMeasurement m;
    m.beta_mag = e.beta_mag;
    m.gain_mag = e.gain_mag;
    m.offset_x = e.offset.x;
    m.offset_y = e.offset.y;
    if (cfg.zero_noise) {
      m.theta_hat = e.angle;
      m.d_hat = e.range;
      m.mu_hat = e.doppler;
      m.var_theta = m.var_d = m.var_mu = 0.0;
    } else {
      const auto v = measurement_variances(e.beta_mag * e.beta_mag,
                                           e.gain_mag * e.gain_mag, beam, cfg, rho);
      m.var_theta = v.angle;
      m.var_d = v.range;
      m.var_mu = v.doppler;
      m.theta_hat = e.angle + std::sqrt(v.angle) * rng.normal();
      m.d_hat = e.range + std::sqrt(v.range) * rng.normal();
      m.mu_hat = e.doppler + std::sqrt(v.doppler) * rng.normal();
    }
    out.push_back(m);
  }
  return out;
}

Vec2 fuse_centroid(const ScattererMeasurementSet& meas) {
  if (meas.empty()) throw std::invalid_argument("fuse_centroid: empty measurement set");
  Vec2 c;
  for (const auto& m : meas) {
    c.x += m.d_hat * std::cos(m.theta_hat);
    c.y += m.d_hat * std::sin(m.theta_hat);
  }
  c.x /= static_cast<double>(meas.size());
  c.y /= static_cast<double>(meas.size());
  return c;
}

Vec2 effective_cr_offsets(const ScattererMeasurementSet& meas,
                          const VehicleGeometry& geom) {
  if (meas.empty()) {
    throw std::invalid_argument("effective_cr_offsets: empty measurement set");
  }
  Vec2 mean_off;
  for (const auto& m : meas) {
    mean_off.x += m.offset_x;
    mean_off.y += m.offset_y;
  }
  mean_off.x /= static_cast<double>(meas.size());
  mean_off.y /= static_cast<double>(meas.size());
  return {geom.cr_dx - mean_off.x, geom.cr_dy - mean_off.y};
}

double mle_velocity(const ScattererMeasurementSet& meas, double carrier_freq) {
  if (meas.empty()) throw std::invalid_argument("mle_velocity: empty measurement set");
  double num = 0.0;
  double den = 0.0;
  for (const auto& m : meas) {
    // Zero variance marks an exact measurement; unit weights then recover the
    // unweighted MLE, consistent with the zero-noise diagnostic mode.
    const double w = m.var_mu > 0.0 ? 1.0 / m.var_mu : 1.0;
    const double c = std::cos(m.theta_hat);
    num += w * m.mu_hat * c;
    den += w * c * c;
  }
  if (den < 1e-12) {
    throw std::domain_error("mle_velocity: degenerate geometry (all scatterers near broadside)");
  }
  return kSpeedOfLight / (2.0 * carrier_freq) * num / den;
}

CrMeasurement cr_measurement(const Vec2& fused, double v_hat, const Vec2& eff_offsets,
                             double var_phi, double var_d, double var_v) {
  const double x = fused.x + eff_offsets.x;
  const double y = fused.y + eff_offsets.y;
  if (x == 0.0 && y == 0.0) {
    throw std::domain_error("cr_measurement: CR position estimate at the origin");
  }
  CrMeasurement out;
  // atan2 realizes arctan(y/x) with +pi branch correction for x < 0 (y > 0
  // in this geometry), mapping into (0, pi).
  out.phi_hat = std::atan2(y, x);
  out.d_hat = std::hypot(x, y);
  out.v_hat = v_hat;
  out.var_phi = var_phi;
  out.var_d = var_d;
  out.var_v = var_v;
  return out;
}

}  // namespace isac
