#include "isac/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/constants.hpp"

namespace isac {

StateVector evolve_state(const StateVector& x, double delta_t) {
  StateVector out;
  out.phi = x.phi + x.v * delta_t * std::sin(x.phi) / x.d;
  out.d = x.d - x.v * delta_t * std::cos(x.phi);
  out.v = x.v;
  return out;
}

namespace {

// Factor pair (rows, cols) of k whose aspect best matches the rectangle.
std::pair<int, int> grid_dims(int k, double length, double width) {
  const double target = length / width;
  int best_rows = 1, best_cols = k;
  double best_err = std::abs(static_cast<double>(k) - target);
  for (int rows = 1; rows * rows <= k; ++rows) {
    if (k % rows != 0) continue;
    const int cols = k / rows;
    const double err = std::abs(static_cast<double>(cols) / rows - target);
    if (err < best_err) {
      best_err = err;
      best_rows = rows;
      best_cols = cols;
    }
  }
  return {best_rows, best_cols};
}

}  // namespace

std::vector<Vec2> scatterer_layout(int k, double length, double width) {
  if (k < 1) throw std::invalid_argument("scatterer_layout: K must be >= 1");
  const auto [rows, cols] = grid_dims(k, length, width);
  std::vector<Vec2> offsets;
  offsets.reserve(static_cast<std::size_t>(k));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Vec2 p;
      p.x = -length / 2.0 + (c + 0.5) * length / cols;
      p.y = -width / 2.0 + (r + 0.5) * width / rows;
      offsets.push_back(p);
    }
  }
  return offsets;
}

std::vector<Vec2> random_scatterer_layout(int k, double length, double width,
                                          RandomStream& rng) {
  if (k < 1) throw std::invalid_argument("random_scatterer_layout: K must be >= 1");
  std::vector<Vec2> offsets(static_cast<std::size_t>(k));
  for (auto& p : offsets) {
    p.x = rng.uniform(-length / 2.0, length / 2.0);
    p.y = rng.uniform(-width / 2.0, width / 2.0);
  }
  return offsets;
}

GroundTruth generate_trajectory(const SimConfig& cfg, RandomStream& rng) {
  cfg.validate();

  VehicleGeometry geom;
  geom.length = cfg.vehicle_length;
  geom.width = cfg.vehicle_width;
  geom.cr_dx = cfg.cr_offset_x;
  geom.cr_dy = cfg.cr_offset_y;
  geom.scatterer_offsets =
      cfg.random_layout
          ? random_scatterer_layout(cfg.scatterer_count, geom.length, geom.width, rng)
          : scatterer_layout(cfg.scatterer_count, geom.length, geom.width);

  const int n_epochs = cfg.epochs();
  const double fc_over_c = cfg.carrier_freq / kSpeedOfLight;

  std::vector<EpochTruth> epochs;
  epochs.reserve(static_cast<std::size_t>(n_epochs));

  for (int n = 0; n < n_epochs; ++n) {
    EpochTruth e;
    // Exact kinematics: motion along the negative x axis, RSU-relative frame.
    e.centroid.x = cfg.init_x - cfg.rsu_x - cfg.speed * n * cfg.delta_t;
    e.centroid.y = cfg.init_y - cfg.rsu_y;
    e.cr_pos.x = e.centroid.x + geom.cr_dx;
    e.cr_pos.y = e.centroid.y + geom.cr_dy;

    const double d_cr = std::hypot(e.cr_pos.x, e.cr_pos.y);
    if (d_cr < 1e-9) {
      throw std::invalid_argument("generate_trajectory: trajectory crosses d = 0");
    }
    e.cr.phi = std::atan2(e.cr_pos.y, e.cr_pos.x);
    e.cr.d = d_cr;
    e.cr.v = cfg.speed;

    e.scatterers.reserve(geom.scatterer_offsets.size());
    for (const auto& off : geom.scatterer_offsets) {
      ScattererTruth s;
      s.pos.x = e.centroid.x + off.x;
      s.pos.y = e.centroid.y + off.y;
      s.range = std::hypot(s.pos.x, s.pos.y);
      if (s.range < 1e-9) {
        throw std::invalid_argument("generate_trajectory: scatterer range hits 0");
      }
      s.angle = std::atan2(s.pos.y, s.pos.x);
      s.doppler = 2.0 * cfg.speed * std::cos(s.angle) * fc_over_c;
      s.rcs = cfg.zero_noise ? std::complex<double>(1.0, 0.0) : rng.complex_normal();
      e.scatterers.push_back(s);
    }
    epochs.push_back(std::move(e));
  }
  return GroundTruth(std::move(epochs), std::move(geom));
}

}  // namespace isac
