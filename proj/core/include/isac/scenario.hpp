#pragma once

#include <complex>
#include <vector>

#include "isac/config.hpp"
#include "isac/rng.hpp"

namespace isac {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Kinematic state of the communication receiver relative to the RSU:
/// angle phi in (0, pi), range d > 0, vehicle speed v.
struct StateVector {
  double phi = 0.0;  // [rad]
  double d = 0.0;    // [m]
  double v = 0.0;    // [m/s]
};

/// One step of the constant-speed state evolution model
///   phi' = phi + v dT sin(phi) / d
///   d'   = d   - v dT cos(phi)
///   v'   = v
/// This is the tracker's motion model; ground truth uses exact kinematics.
StateVector evolve_state(const StateVector& x, double delta_t);

/// Vehicle body frame: rectangle of length x width centred on the centroid,
/// CR mounted at (cr_dx, cr_dy), K scatterer offsets inside the rectangle.
struct VehicleGeometry {
  double length = 0.0;
  double width = 0.0;
  double cr_dx = 0.0;
  double cr_dy = 0.0;
  std::vector<Vec2> scatterer_offsets;
};

/// Deterministic cell-centred grid of k points over a length x width
/// rectangle. Rows/columns are chosen so the grid aspect tracks the body
/// aspect (k = 8 on 5 x 2 gives 4 x 2).
std::vector<Vec2> scatterer_layout(int k, double length, double width);

/// Uniform random placement inside the rectangle; fixed for a whole run.
std::vector<Vec2> random_scatterer_layout(int k, double length, double width,
                                          RandomStream& rng);

/// Per-scatterer ground truth at one epoch (RSU-relative).
struct ScattererTruth {
  Vec2 pos;
  double range = 0.0;    // [m]
  double angle = 0.0;    // [rad], in (0, pi)
  double doppler = 0.0;  // [Hz]
  std::complex<double> rcs;  // Swerling-I complex RCS, redrawn per epoch
};

struct EpochTruth {
  Vec2 centroid;
  Vec2 cr_pos;
  StateVector cr;
  std::vector<ScattererTruth> scatterers;
};

/// Immutable per-run ground truth: exact constant-velocity motion along the
/// negative x axis, derived scatterer angles/ranges/Dopplers, fresh RCS draws
/// per epoch. Safe to share across threads once built.
class GroundTruth {
 public:
  GroundTruth(std::vector<EpochTruth> epochs, VehicleGeometry geom)
      : epochs_(std::move(epochs)), geom_(std::move(geom)) {}

  int epochs() const { return static_cast<int>(epochs_.size()); }
  const EpochTruth& at(int n) const { return epochs_[static_cast<std::size_t>(n)]; }
  const VehicleGeometry& geometry() const { return geom_; }

 private:
  std::vector<EpochTruth> epochs_;
  VehicleGeometry geom_;
};

/// Builds the full trajectory for one run. Throws std::invalid_argument if
/// the trajectory takes any range (CR or scatterer) to zero or the config is
/// invalid. In zero-noise mode RCS magnitudes are pinned to 1.
GroundTruth generate_trajectory(const SimConfig& cfg, RandomStream& rng);

}  // namespace isac
