#include "lpfom/pdhg.h"

#include <cmath>
#include <limits>

namespace lpfom {

std::vector<double> project_box(std::vector<double> x,
                                const std::vector<double>& l,
                                const std::vector<double>& u) {
  if (x.size() != l.size() || x.size() != u.size()) {
    throw DimensionError("bounds do not match the vector length");
  }
  project_box_in_place<double>(x, l, u);
  return x;
}

std::vector<double> project_dual_cone(std::vector<double> y, int m1) {
  if (m1 < 0 || static_cast<std::size_t>(m1) > y.size()) {
    throw DimensionError("inequality count exceeds the dual length");
  }
  project_dual_cone_in_place<double>(y, m1);
  return y;
}

StepSizeDecision adaptive_step_update(double eta, double omega,
                                      std::int64_t attempt, double delta_x_sq,
                                      double delta_y_sq, double interaction) {
  if (!(eta > 0.0) || !(omega > 0.0)) {
    throw ParameterError("step size and primal weight must be positive");
  }
  const double k1 = static_cast<double>(std::max<std::int64_t>(attempt, 1)) + 1.0;
  const double movement = omega * delta_x_sq + delta_y_sq / omega;
  StepSizeDecision d;
  d.limit = interaction > 0.0 ? movement / (2.0 * interaction)
                              : std::numeric_limits<double>::infinity();
  d.accept = eta <= d.limit;
  d.new_eta = std::min((1.0 - std::pow(k1, -kStepReductionExponent)) * d.limit,
                       (1.0 + std::pow(k1, -kStepGrowthExponent)) * eta);
  return d;
}

double update_primal_weight(double omega, double delta_x_norm,
                            double delta_y_norm, double theta) {
  if (!(omega > 0.0)) throw ParameterError("primal weight must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ParameterError("primal weight smoothing must lie in [0, 1]");
  }
  if (!(delta_x_norm > 0.0) || !(delta_y_norm > 0.0) ||
      !std::isfinite(delta_x_norm) || !std::isfinite(delta_y_norm)) {
    return omega;
  }
  return std::exp(theta * std::log(delta_y_norm / delta_x_norm) +
                  (1.0 - theta) * std::log(omega));
}

}  // namespace lpfom
