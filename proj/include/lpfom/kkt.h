#ifndef LPFOM_KKT_H_
#define LPFOM_KKT_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lpfom/options.h"
#include "lpfom/problem.h"

namespace lpfom {

struct KktResiduals {
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double abs_gap = 0.0;

  // sqrt(pres^2 + dres^2 + gap^2).
  double norm() const;
  // Same with pres scaled by omega and dres by 1 / omega.
  double weighted_norm(double omega) const;
};

// Residuals of (x, y) against the saddle data, in whatever space `sf` lives:
//   pres = |(Ax - b; max(0, h - Gx))|_2
//   lambda = c - K'y, counted as a violation where the matching bound is
//   infinite (lambda+ with l = -inf, lambda- with u = +inf)
//   dual objective = q'y + sum_{l finite} l lambda+ - sum_{u finite} u lambda-
// Both objectives include the objective offset.
KktResiduals compute_kkt_residuals(const SaddleForm& sf,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y);
KktResiduals compute_kkt_residuals(const LpProblem& p,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y);

// c - K'y.
std::vector<double> reduced_costs(const SaddleForm& sf,
                                  const std::vector<double>& y);

// All three with <=:
//   gap  <= eps_abs + eps_rel (|pobj| + |dobj|)
//   pres <= eps_abs + eps_rel |q|_2
//   dres <= eps_abs + eps_rel |c|_2
bool check_termination(const KktResiduals& k, double c_norm, double q_norm,
                       const SolverOptions& opts);

inline constexpr double kSufficientDecay = 0.2;
inline constexpr double kNecessaryDecay = 0.8;
inline constexpr double kArtificialRestartFraction = 0.36;

// Adaptive restart test. The metric is the caller's: the weighted KKT norm of
// the running average (raPDHG) or the fixed-point residual of the last step
// (r2HPDHG). Same thresholds for both.
bool should_restart(Algorithm algorithm, double current_metric,
                    double metric_at_restart_start,
                    double metric_at_last_check,
                    std::int64_t steps_since_restart, std::int64_t total_steps);

enum class CertificateKind { kPrimalInfeasible, kDualInfeasible };

struct InfeasibilityCertificate {
  CertificateKind kind;
  // Unit-norm dual ray (primal infeasibility) or primal ray (dual
  // infeasibility), in original space.
  std::vector<double> ray;
};

// Looks for a Farkas ray along (current - anchor), both in original space.
// The dual part is tried first.
std::optional<InfeasibilityCertificate> detect_infeasibility(
    const SaddleForm& sf, const std::vector<double>& x_current,
    const std::vector<double>& y_current, const std::vector<double>& x_anchor,
    const std::vector<double>& y_anchor, std::int64_t steps_since_restart,
    const SolverOptions& opts);
std::optional<InfeasibilityCertificate> detect_infeasibility(
    const LpProblem& p, const std::vector<double>& x_current,
    const std::vector<double>& y_current, const std::vector<double>& x_anchor,
    const std::vector<double>& y_anchor, std::int64_t steps_since_restart,
    const SolverOptions& opts);

// Individual ray tests, exposed for testing.
bool is_dual_ray(const SaddleForm& sf, const std::vector<double>& d_y,
                 double eps);
bool is_primal_ray(const SaddleForm& sf, const std::vector<double>& d_x,
                   double eps);

}  // namespace lpfom

#endif  // LPFOM_KKT_H_
