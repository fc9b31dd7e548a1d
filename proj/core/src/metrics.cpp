#include "isac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/array.hpp"

namespace isac {

double achievable_rate(double snr) {
  if (snr < 0.0) throw std::invalid_argument("achievable_rate: snr must be >= 0");
  return std::log2(1.0 + snr);
}

RateComponents rate_components(double phi_true, double d_true, double phi_steer_wide,
                               int n_wide, double phi_steer_narrow, int n_narrow,
                               const SimConfig& cfg) {
  const double alpha_sq = (cfg.alpha_ref / d_true) * (cfg.alpha_ref / d_true);
  RateComponents out;
  {
    const double g = std::abs(beam_gain(phi_true, phi_steer_wide, n_wide));
    const double snr = cfg.tx_power * alpha_sq * n_wide * g * g / cfg.comm_noise_var;
    out.wide = achievable_rate(snr);
  }
  {
    const double g = std::abs(beam_gain(phi_true, phi_steer_narrow, n_narrow));
    const double snr = cfg.tx_power * alpha_sq * n_narrow * g * g / cfg.comm_noise_var;
    out.narrow_aligned = achievable_rate(snr);
  }
  return out;
}

std::vector<double> rmse(const std::vector<std::vector<double>>& errs_by_run) {
  if (errs_by_run.empty()) throw std::invalid_argument("rmse: need at least one run");
  const std::size_t epochs = errs_by_run.front().size();
  for (const auto& run : errs_by_run) {
    if (run.size() != epochs) throw std::invalid_argument("rmse: ragged input");
  }
  std::vector<double> out(epochs, 0.0);
  for (const auto& run : errs_by_run) {
    for (std::size_t n = 0; n < epochs; ++n) out[n] += run[n] * run[n];
  }
  const double scale = 1.0 / static_cast<double>(errs_by_run.size());
  for (auto& v : out) v = std::sqrt(v * scale);
  return out;
}

std::vector<std::pair<double, double>> error_cdf(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("error_cdf: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    cdf.emplace_back(samples[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

double outage_probability(const std::vector<double>& rates, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("outage_probability: gamma must be >= 0");
  if (rates.empty()) throw std::invalid_argument("outage_probability: empty input");
  std::size_t below = 0;
  for (double r : rates) {
    if (r <= gamma) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(rates.size());
}

}  // namespace isac
