#pragma once

#include "isac/config.hpp"
#include "isac/metrics.hpp"
#include "isac/rng.hpp"

namespace isac {

/// Point-target EKF baseline: tracks one scatterer of the vehicle (picked at
/// random per run unless pinned by config) with a fixed pencil beam of
/// N_t^narrow antennas, treating that scatterer as if it were the CR. The
/// logged rate is evaluated at the true CR angle, so the CR's offset from the
/// tracked scatterer shows up as beam misalignment.
/// In the log, pred/est carry the scatterer-track state while truth carries
/// the CR state.
RunLog run_ekf_point(const SimConfig& cfg, RandomStream& rng);

/// Simplified auxiliary-beam-pair baseline: each epoch transmits two probe
/// beams at the current estimate +/- its half-power half-beamwidth, forms the
/// amplitude-comparison ratio of the CR's received powers, and inverts the
/// noiseless ratio curve over that half-beamwidth to update the estimate
/// (clamped; also clamped to the configured half search range). The data
/// beam is steered at the updated estimate. When the per-epoch angular
/// motion outruns the invertible window the estimate saturates and the track
/// diverges; that outcome is logged, not raised.
/// ABP estimates the angle only; est.d/est.v mirror the truth.
RunLog run_abp(const SimConfig& cfg, RandomStream& rng);

}  // namespace isac
