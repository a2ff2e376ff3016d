#ifndef LPFOM_DIFFOPT_H_
#define LPFOM_DIFFOPT_H_

#include <span>
#include <vector>

#include "lpfom/options.h"
#include "lpfom/problem.h"
#include "lpfom/solver.h"

namespace lpfom {

using CostBatch = std::vector<std::vector<double>>;

// Predicted costs, true costs, and the optimal solutions / objectives under
// the true costs. Construction checks the shapes and that each true_obj is
// c . x* to 1e-9 (relative, floored at 1).
class SpoBatch {
 public:
  SpoBatch(CostBatch pred_costs, CostBatch true_costs, CostBatch true_sols,
           std::vector<double> true_objs);

  const CostBatch& pred_costs() const { return pred_; }
  const CostBatch& true_costs() const { return true_; }
  const CostBatch& true_sols() const { return sols_; }
  const std::vector<double>& true_objs() const { return objs_; }
  std::size_t size() const { return pred_.size(); }
  std::size_t dimension() const { return pred_.empty() ? 0 : pred_[0].size(); }

 private:
  CostBatch pred_;
  CostBatch true_;
  CostBatch sols_;
  std::vector<double> objs_;
};

struct SpoLoss {
  // Batch mean.
  double loss = 0.0;
  std::vector<double> per_member;
  // x*(2 pred - true), kept for the backward pass.
  CostBatch inner_sols;
  std::vector<SolveResult> inner_results;
};

// -min_{x in S} (2 c_hat - c)'x + 2 c_hat'x*(c) - c'x*(c), averaged over the
// batch. The objective of `feasible_set` is replaced per member. `warm` is
// empty or holds one start per member (read when opts.warm_start is set).
// A member whose inner solve is not Optimal raises BatchMemberError.
SpoLoss spo_plus_loss(const SpoBatch& batch, const LpProblem& feasible_set,
                      const SolverOptions& opts,
                      std::span<const WarmStart> warm = {});

enum class Reduction { kMean, kNone };

// 2 x*(c) - 2 x*(2 c_hat - c) per member, divided by the batch size under
// kMean.
CostBatch spo_plus_subgradient(const CostBatch& true_sols,
                               const CostBatch& inner_sols,
                               Reduction reduction = Reduction::kMean);

struct Regret {
  // sum_i c_i'(x*(c_hat_i) - x*(c_i)) / sum_i |c_i'x*(c_i)|.
  double value = 0.0;
  // Unnormalized c_i'(x*(c_hat_i) - x*(c_i)).
  std::vector<double> per_instance;
};

// Solves both batches. UndefinedMetricError when the denominator is 0;
// BatchMemberError for a non-Optimal solve.
Regret normalized_regret(const CostBatch& pred_costs,
                         const CostBatch& true_costs,
                         const LpProblem& feasible_set,
                         const SolverOptions& opts);
// Same, with x*(c_i) already known.
Regret normalized_regret(const CostBatch& pred_costs,
                         const CostBatch& true_costs,
                         const CostBatch& true_sols,
                         const LpProblem& feasible_set,
                         const SolverOptions& opts);

// Optimal solutions of `feasible_set` under each cost vector.
std::vector<SolveResult> solve_costs(const CostBatch& costs,
                                     const LpProblem& feasible_set,
                                     const SolverOptions& opts,
                                     std::span<const WarmStart> warm = {});

}  // namespace lpfom

#endif  // LPFOM_DIFFOPT_H_
