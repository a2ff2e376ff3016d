#include "lpfom/options.h"

#include <cmath>

#include "lpfom/errors.h"

namespace lpfom {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void validate_options(const SolverOptions& o) {
  require_positive(o.eps_abs, "eps_abs");
  require_positive(o.eps_rel, "eps_rel");
  require_positive(o.eps_primal_infeasible, "eps_primal_infeasible");
  require_positive(o.eps_dual_infeasible, "eps_dual_infeasible");
  require_positive(o.eps_feas_polish, "eps_feas_polish");
  if (o.iteration_limit < 1) throw ParameterError("iteration_limit must be >= 1");
  if (o.check_frequency < 1) throw ParameterError("check_frequency must be >= 1");
  if (o.display_frequency < 1) {
    throw ParameterError("display_frequency must be >= 1");
  }
  if (o.ruiz_iterations < 0) throw ParameterError("ruiz_iterations must be >= 0");
  if (!(o.pock_chambolle_alpha >= 0.0 && o.pock_chambolle_alpha <= 2.0)) {
    throw ParameterError("pock_chambolle_alpha must lie in [0, 2]");
  }
  if (!(o.theta >= 0.0 && o.theta <= 1.0)) {
    throw ParameterError("theta must lie in [0, 1]");
  }
}

std::string_view to_string(Algorithm a) {
  return a == Algorithm::kRaPdhg ? "rapdhg" : "r2hpdhg";
}

std::string_view to_string(Precision p) {
  return p == Precision::kF64 ? "f64" : "f32";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "rapdhg") return Algorithm::kRaPdhg;
  if (s == "r2hpdhg") return Algorithm::kR2Hpdhg;
  return std::nullopt;
}

std::optional<Precision> parse_precision(std::string_view s) {
  if (s == "f64") return Precision::kF64;
  if (s == "f32") return Precision::kF32;
  return std::nullopt;
}

}  // namespace lpfom
