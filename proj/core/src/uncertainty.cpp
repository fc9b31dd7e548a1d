#include "isac/uncertainty.hpp"

#include <cmath>
#include <stdexcept>

#include "isac/constants.hpp"

namespace isac {

ScattererStack make_stack(const ScattererMeasurementSet& meas) {
  ScattererStack s;
  s.theta.reserve(meas.size());
  s.range.reserve(meas.size());
  s.var_theta.reserve(meas.size());
  s.var_range.reserve(meas.size());
  for (const auto& m : meas) {
    s.theta.push_back(m.theta_hat);
    s.range.push_back(m.d_hat);
    s.var_theta.push_back(m.var_theta);
    s.var_range.push_back(m.var_d);
  }
  return s;
}

namespace {

struct FusionGeometry {
  double dx_sum = 0.0;  // DX = sum d cos theta + K dx
  double dy_sum = 0.0;  // DY = sum d sin theta + K dy
  double r2 = 0.0;      // DX^2 + DY^2
};

FusionGeometry fusion_geometry(const ScattererStack& stack, double dx, double dy) {
  const int k = stack.size();
  if (k < 1) throw std::invalid_argument("uncertainty: empty stack");
  FusionGeometry g;
  for (int i = 0; i < k; ++i) {
    g.dx_sum += stack.range[static_cast<std::size_t>(i)] *
                std::cos(stack.theta[static_cast<std::size_t>(i)]);
    g.dy_sum += stack.range[static_cast<std::size_t>(i)] *
                std::sin(stack.theta[static_cast<std::size_t>(i)]);
  }
  g.dx_sum += k * dx;
  g.dy_sum += k * dy;
  g.r2 = g.dx_sum * g.dx_sum + g.dy_sum * g.dy_sum;
  if (!(g.r2 > 0.0)) {
    throw std::domain_error("uncertainty: fused position at the origin");
  }
  return g;
}

}  // namespace

FusionJacobians fusion_jacobians(const ScattererStack& stack, double dx, double dy) {
  const auto g = fusion_geometry(stack, dx, dy);
  const int k = stack.size();
  const double r = std::sqrt(g.r2);

  FusionJacobians jac;
  jac.angle.resize(static_cast<std::size_t>(2 * k));
  jac.distance.resize(static_cast<std::size_t>(2 * k));
  for (int i = 0; i < k; ++i) {
    const double th = stack.theta[static_cast<std::size_t>(i)];
    const double di = stack.range[static_cast<std::size_t>(i)];
    const double c = std::cos(th);
    const double s = std::sin(th);
    jac.angle[static_cast<std::size_t>(i)] = di * (c * g.dx_sum + s * g.dy_sum) / g.r2;
    jac.angle[static_cast<std::size_t>(k + i)] = (s * g.dx_sum - c * g.dy_sum) / g.r2;
    jac.distance[static_cast<std::size_t>(i)] =
        di * (-s * g.dx_sum + c * g.dy_sum) / (k * r);
    jac.distance[static_cast<std::size_t>(k + i)] =
        (c * g.dx_sum + s * g.dy_sum) / (k * r);
  }
  return jac;
}

namespace {

double quadratic_form(const std::vector<double>& row, const ScattererStack& stack) {
  const int k = stack.size();
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += row[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(i)] *
           stack.var_theta[static_cast<std::size_t>(i)];
    acc += row[static_cast<std::size_t>(k + i)] * row[static_cast<std::size_t>(k + i)] *
           stack.var_range[static_cast<std::size_t>(i)];
  }
  return acc;
}

}  // namespace

double angle_variance_approx(const ScattererStack& stack, double dx, double dy) {
  return quadratic_form(fusion_jacobians(stack, dx, dy).angle, stack);
}

double distance_variance_approx(const ScattererStack& stack, double dx, double dy) {
  return quadratic_form(fusion_jacobians(stack, dx, dy).distance, stack);
}

double velocity_variance_approx(std::span<const double> theta_hat,
                                std::span<const double> var_mu, double carrier_freq) {
  if (theta_hat.empty() || theta_hat.size() != var_mu.size()) {
    throw std::invalid_argument("velocity_variance_approx: bad inputs");
  }
  const double scale = 2.0 * carrier_freq / kSpeedOfLight;
  double info = 0.0;
  bool exact = false;
  for (std::size_t i = 0; i < theta_hat.size(); ++i) {
    if (!(var_mu[i] > 0.0)) {
      exact = true;
      continue;
    }
    const double a = scale * std::cos(theta_hat[i]);
    info += a * a / var_mu[i];
  }
  if (exact) return 0.0;
  if (info < 1e-12) {
    throw std::domain_error("velocity_variance_approx: degenerate geometry");
  }
  return 1.0 / info;
}

}  // namespace isac
