#ifndef LPFOM_SOLVER_H_
#define LPFOM_SOLVER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lpfom/kkt.h"
#include "lpfom/options.h"
#include "lpfom/problem.h"

namespace lpfom {

enum class SolveStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kIterationLimit,
};

std::string_view to_string(SolveStatus s);

// Starting point in original space; either half may be missing (zeros).
// Both are projected into the feasible box / cone before use.
struct WarmStart {
  std::optional<std::vector<double>> x;
  std::optional<std::vector<double>> y;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> x;
  std::vector<double> y;
  // c - K'y on original data.
  std::vector<double> reduced_costs;
  double objective = 0.0;
  double dual_objective = 0.0;
  KktResiduals kkt;
  // abs_gap / (|pobj| + |dobj|), 0 when both objectives vanish.
  double rel_gap = 0.0;
  // Accepted steps of the main solve.
  std::int64_t iterations = 0;
  std::int64_t restarts = 0;
  std::int64_t polish_iterations = 0;
  bool polish_complete = false;
  // Objective after polishing minus objective before.
  double objective_degradation = 0.0;
  std::optional<InfeasibilityCertificate> certificate;
};

// Full pipeline: validate, precondition, iterate, unscale, optionally
// polish. Warm-start vectors are only read when opts.warm_start is set.
SolveResult solve(const LpProblem& p, const SolverOptions& opts = {},
                  const WarmStart& warm = {});

struct PolishResult {
  std::vector<double> x;
  std::vector<double> y;
  std::int64_t iterations = 0;
  bool primal_complete = false;
  bool dual_complete = false;

  bool complete() const { return primal_complete && dual_complete; }
};

// Primal pass: the problem with c = 0, started at (x, 0), run until the
// primal residual is at most eps_feas_polish. Dual pass: q = 0 and finite
// bounds moved to 0, started at (0, y), run until the dual residual is at
// most eps_feas_polish. A pass whose input already meets the tolerance is
// skipped and its half returned as given (after projection).
PolishResult feasibility_polish(const LpProblem& p, const std::vector<double>& x,
                                const std::vector<double>& y,
                                const SolverOptions& opts);

// Solves instances of identical shape, on up to `workers` threads (0 picks
// the hardware concurrency). Each result equals solve() on that instance
// with the same options. When every instance has the same constraint
// matrices the preconditioner is computed once. `warm` is empty or has one
// entry per problem.
std::vector<SolveResult> batch_solve(std::span<const LpProblem> problems,
                                     const SolverOptions& opts = {},
                                     std::span<const WarmStart> warm = {},
                                     unsigned workers = 0);

}  // namespace lpfom

#endif  // LPFOM_SOLVER_H_
