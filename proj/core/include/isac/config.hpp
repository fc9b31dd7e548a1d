#pragma once

#include <cstdint>
#include <string>

#include "isac/constants.hpp"

namespace isac {

/// Full simulation configuration.
///
/// Defaults reproduce the evaluation setup: an RSU at the origin with a
/// dynamic-width transmit ULA, a vehicle starting at (60 m, 20 m) moving in
/// the negative-x direction at 20 m/s, and K = 8 scatterers on a 5 m x 2 m
/// body. Loadable from a plain-text key=value file (see load_config).
struct SimConfig {
  // Scenario and signal parameters.
  double total_time = 8.0;        // T [s]
  double delta_t = 0.01;          // Delta T, epoch duration [s]
  double carrier_freq = 30e9;     // f_c [Hz]
  double tx_power = 1.0;          // p_n (linear)
  double coverage_width_m = 6.0;  // Delta d, wide-beam coverage target [m]
  double speed = 20.0;            // v [m/s]
  double cr_offset_x = 1.5;       // Delta x, CR offset from centroid [m]
  double cr_offset_y = 0.5;       // Delta y [m]
  int n_t_narrow = 128;           // N_t^narrow
  int n_t_max = 128;              // N_t,max
  double a1 = 1.05e-2;            // measurement-variance constants a_1..a_3
  double a2 = 3.5e-2;
  double a3 = 1.05e-2;
  int n_r = 128;                  // receive antennas N_r
  int scatterer_count = 8;        // K
  double process_std_phi_deg = 0.01;  // sigma_phi_bar [deg]
  double process_std_d = 0.1;         // sigma_d_bar [m]
  double process_std_v = 0.25;        // sigma_v_bar [m/s]
  double noise_var = 0.15;            // sigma^2, radar receiver noise
  double comm_noise_var = 1.0;        // sigma_C^2, CR receiver noise
  double matched_filter_gain = 10.0;  // G
  double alpha_ref = 1.0;             // reference path loss at 1 m

  // Geometry.
  double rsu_x = 0.0;
  double rsu_y = 0.0;
  double init_x = 60.0;  // initial vehicle centroid [m]
  double init_y = 20.0;
  double vehicle_length = 5.0;  // [m]
  double vehicle_width = 2.0;   // [m]
  bool random_layout = false;   // scatterers: deterministic grid (default) or uniform random

  // Waveform resolution model.
  double bandwidth_hz = 500e6;  // B; range resolution = c / (2B)
  double doppler_res_hz = 0.0;  // 0 -> use 1 / delta_t

  // Tracker knobs.
  double init_scale = 10.0;    // initial estimate std = init_scale * process std
  bool joseph_update = false;  // Joseph-form covariance update

  // Baseline knobs.
  double abp_half_search = kPi / 32.0;  // ABP half search range [rad]
  double abp_pilot_gain = 4000.0;       // ABP pilot integration gain (symbols)
  int ekf_point_scatterer = -1;         // fixed tracked scatterer, -1 = random per run

  // Evaluation.
  double rate_threshold = 0.02;  // gamma [bits/s/Hz]
  int runs = 500;                // Monte Carlo runs
  std::uint64_t seed = 1;

  // Diagnostic: force every noise draw and noise-variance model to zero.
  bool zero_noise = false;

  double process_std_phi_rad() const { return deg2rad(process_std_phi_deg); }
  double range_resolution() const { return kSpeedOfLight / (2.0 * bandwidth_hz); }
  double doppler_resolution() const {
    return doppler_res_hz > 0.0 ? doppler_res_hz : 1.0 / delta_t;
  }
  int epochs() const { return static_cast<int>(total_time / delta_t); }

  /// Validates invariants (positivity, stop-go condition); throws
  /// std::invalid_argument with a descriptive message on violation.
  void validate() const;
};

/// Parses a key=value configuration file ('#' comments, blank lines ok).
/// Unknown keys are rejected. Returns a validated config.
SimConfig load_config(const std::string& path);

/// Applies one key=value assignment to an existing config (file syntax).
void apply_config_entry(SimConfig& cfg, const std::string& key, const std::string& value);

}  // namespace isac
