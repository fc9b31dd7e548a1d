#include "isac/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace isac {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail("config: bad numeric value for '" + key + "': " + v);
  }
  if (pos != v.size()) fail("config: trailing junk in value for '" + key + "': " + v);
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int i = static_cast<int>(std::lround(x));
  if (std::abs(x - i) > 1e-9) fail("config: expected integer for '" + key + "': " + v);
  return i;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  fail("config: expected boolean for '" + key + "': " + v);
}

}  // namespace

void SimConfig::validate() const {
  require(total_time > 0.0, "config: T must be > 0");
  require(delta_t > 0.0, "config: delta_T must be > 0");
  require(total_time >= delta_t, "config: T must cover at least one epoch");
  require(carrier_freq > 0.0, "config: f_c must be > 0");
  require(tx_power > 0.0, "config: p_n must be > 0");
  require(coverage_width_m > 0.0, "config: delta_d must be > 0");
  require(speed >= 0.0, "config: v must be >= 0");
  require(n_t_narrow >= 1, "config: N_t_narrow must be >= 1");
  require(n_t_max >= 1, "config: N_t_max must be >= 1");
  require(a1 > 0.0 && a2 > 0.0 && a3 > 0.0, "config: a_1..a_3 must be > 0");
  require(n_r >= 1, "config: N_r must be >= 1");
  require(scatterer_count >= 1, "config: K must be >= 1");
  require(process_std_phi_deg > 0.0, "config: sigma_phi_bar_deg must be > 0");
  require(process_std_d > 0.0, "config: sigma_d_bar must be > 0");
  require(process_std_v > 0.0, "config: sigma_v_bar must be > 0");
  require(noise_var > 0.0, "config: sigma_sq must be > 0");
  require(comm_noise_var > 0.0, "config: sigma_C_sq must be > 0");
  require(matched_filter_gain > 0.0, "config: G must be > 0");
  require(alpha_ref > 0.0, "config: alpha_ref must be > 0");
  require(vehicle_length > 0.0 && vehicle_width > 0.0,
          "config: vehicle dimensions must be > 0");
  require(bandwidth_hz > 0.0, "config: B must be > 0");
  require(init_scale >= 0.0, "config: init_scale must be >= 0");
  require(abp_half_search > 0.0, "config: abp_half_search_range must be > 0");
  require(abp_pilot_gain > 0.0, "config: abp_pilot_gain must be > 0");
  require(rate_threshold >= 0.0, "config: gamma must be >= 0");
  require(runs >= 1, "config: runs must be >= 1");

  // Stop-go model: no range migration within one epoch.
  const double migration = speed * delta_t;
  if (migration > range_resolution() + 1e-12) {
    std::ostringstream os;
    os << "config: stop-go condition violated: v*delta_T = " << migration
       << " m exceeds range resolution c/(2B) = " << range_resolution() << " m";
    fail(os.str());
  }
}

void apply_config_entry(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "T") cfg.total_time = to_double(key, value);
  else if (key == "delta_T") cfg.delta_t = to_double(key, value);
  else if (key == "f_c") cfg.carrier_freq = to_double(key, value);
  else if (key == "p_n") cfg.tx_power = to_double(key, value);
  else if (key == "delta_d") cfg.coverage_width_m = to_double(key, value);
  else if (key == "v") cfg.speed = to_double(key, value);
  else if (key == "delta_x") cfg.cr_offset_x = to_double(key, value);
  else if (key == "delta_y") cfg.cr_offset_y = to_double(key, value);
  else if (key == "N_t_narrow") cfg.n_t_narrow = to_int(key, value);
  else if (key == "N_t_max") cfg.n_t_max = to_int(key, value);
  else if (key == "a_1") cfg.a1 = to_double(key, value);
  else if (key == "a_2") cfg.a2 = to_double(key, value);
  else if (key == "a_3") cfg.a3 = to_double(key, value);
  else if (key == "N_r") cfg.n_r = to_int(key, value);
  else if (key == "K") cfg.scatterer_count = to_int(key, value);
  else if (key == "sigma_phi_bar_deg") cfg.process_std_phi_deg = to_double(key, value);
  else if (key == "sigma_d_bar") cfg.process_std_d = to_double(key, value);
  else if (key == "sigma_v_bar") cfg.process_std_v = to_double(key, value);
  else if (key == "sigma_sq") cfg.noise_var = to_double(key, value);
  else if (key == "sigma_C_sq") cfg.comm_noise_var = to_double(key, value);
  else if (key == "G") cfg.matched_filter_gain = to_double(key, value);
  else if (key == "alpha_ref") cfg.alpha_ref = to_double(key, value);
  else if (key == "rsu_x") cfg.rsu_x = to_double(key, value);
  else if (key == "rsu_y") cfg.rsu_y = to_double(key, value);
  else if (key == "init_x") cfg.init_x = to_double(key, value);
  else if (key == "init_y") cfg.init_y = to_double(key, value);
  else if (key == "vehicle_length") cfg.vehicle_length = to_double(key, value);
  else if (key == "vehicle_width") cfg.vehicle_width = to_double(key, value);
  else if (key == "scatterer_layout") {
    if (value == "grid") cfg.random_layout = false;
    else if (value == "random") cfg.random_layout = true;
    else fail("config: scatterer_layout must be 'grid' or 'random'");
  }
  else if (key == "B") cfg.bandwidth_hz = to_double(key, value);
  else if (key == "doppler_res_hz") cfg.doppler_res_hz = to_double(key, value);
  else if (key == "init_scale") cfg.init_scale = to_double(key, value);
  else if (key == "joseph_update") cfg.joseph_update = to_bool(key, value);
  else if (key == "abp_half_search_range") cfg.abp_half_search = to_double(key, value);
  else if (key == "abp_pilot_gain") cfg.abp_pilot_gain = to_double(key, value);
  else if (key == "ekf_point_scatterer") cfg.ekf_point_scatterer = to_int(key, value);
  else if (key == "gamma") cfg.rate_threshold = to_double(key, value);
  else if (key == "runs") cfg.runs = to_int(key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_double(key, value));
  else fail("config: unknown key '" + key + "'");
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("config: cannot open '" + path + "'");

  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail("config: line " + std::to_string(lineno) + " is not key = value: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail("config: empty key or value at line " + std::to_string(lineno));
    }
    apply_config_entry(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

}  // namespace isac
