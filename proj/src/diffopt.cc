#include "lpfom/diffopt.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpfom/errors.h"
#include "lpfom/linalg.h"

namespace lpfom {
namespace {

void check_rows(const CostBatch& b, std::size_t count, std::size_t n,
                const char* what) {
  if (b.size() != count) {
    throw DimensionError(std::string(what) + " has " + std::to_string(b.size()) +
                         " members, expected " + std::to_string(count));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].size() != n) {
      throw BatchShapeError(i, std::string(what) + " has length " +
                                   std::to_string(b[i].size()) + ", expected " +
                                   std::to_string(n));
    }
  }
}

}  // namespace

SpoBatch::SpoBatch(CostBatch pred_costs, CostBatch true_costs,
                   CostBatch true_sols, std::vector<double> true_objs)
    : pred_(std::move(pred_costs)),
      true_(std::move(true_costs)),
      sols_(std::move(true_sols)),
      objs_(std::move(true_objs)) {
  const std::size_t count = pred_.size();
  const std::size_t n = count ? pred_[0].size() : 0;
  check_rows(pred_, count, n, "pred_costs");
  check_rows(true_, count, n, "true_costs");
  check_rows(sols_, count, n, "true_sols");
  if (objs_.size() != count) {
    throw DimensionError("true_objs must have one entry per member");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double v = dot<double>(true_[i], sols_[i]);
    const double scale = std::max({1.0, std::abs(v), std::abs(objs_[i])});
    if (!(std::abs(v - objs_[i]) <= 1e-9 * scale)) {
      throw BatchMemberError(i, "true_obj " + std::to_string(objs_[i]) +
                                    " differs from c.x* = " + std::to_string(v));
    }
  }
}

std::vector<SolveResult> solve_costs(const CostBatch& costs,
                                     const LpProblem& feasible_set,
                                     const SolverOptions& opts,
                                     std::span<const WarmStart> warm) {
  check_rows(costs, costs.size(),
             static_cast<std::size_t>(feasible_set.num_variables()), "costs");
  std::vector<LpProblem> problems(costs.size(), feasible_set);
  for (std::size_t i = 0; i < costs.size(); ++i) problems[i].c = costs[i];
  std::vector<SolveResult> results = batch_solve(problems, opts, warm);
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].status != SolveStatus::kOptimal) {
      throw BatchMemberError(i, "solve ended with status " +
                                    std::string(to_string(results[i].status)));
    }
  }
  return results;
}

SpoLoss spo_plus_loss(const SpoBatch& batch, const LpProblem& feasible_set,
                      const SolverOptions& opts,
                      std::span<const WarmStart> warm) {
  if (batch.size() == 0) throw DimensionError("empty batch");
  const std::size_t n = batch.dimension();
  CostBatch inner_costs(batch.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      inner_costs[i][j] = 2.0 * batch.pred_costs()[i][j] - batch.true_costs()[i][j];
    }
  }
  SpoLoss out;
  out.inner_results = solve_costs(inner_costs, feasible_set, opts, warm);
  out.per_member.resize(batch.size());
  out.inner_sols.resize(batch.size());
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::vector<double>& xi = out.inner_results[i].x;
    out.per_member[i] = -dot<double>(inner_costs[i], xi) +
                        2.0 * dot<double>(batch.pred_costs()[i], batch.true_sols()[i]) -
                        batch.true_objs()[i];
    total += out.per_member[i];
    out.inner_sols[i] = xi;
  }
  out.loss = total / static_cast<double>(batch.size());
  return out;
}

CostBatch spo_plus_subgradient(const CostBatch& true_sols,
                               const CostBatch& inner_sols, Reduction reduction) {
  const std::size_t count = true_sols.size();
  const std::size_t n = count ? true_sols[0].size() : 0;
  check_rows(true_sols, count, n, "true_sols");
  check_rows(inner_sols, count, n, "inner_sols");
  const double scale = reduction == Reduction::kMean && count > 0
                           ? 1.0 / static_cast<double>(count)
                           : 1.0;
  CostBatch g(count, std::vector<double>(n));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g[i][j] = (2.0 * true_sols[i][j] - 2.0 * inner_sols[i][j]) * scale;
    }
  }
  return g;
}

Regret normalized_regret(const CostBatch& pred_costs,
                         const CostBatch& true_costs,
                         const CostBatch& true_sols,
                         const LpProblem& feasible_set,
                         const SolverOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(feasible_set.num_variables());
  check_rows(pred_costs, pred_costs.size(), n, "pred_costs");
  check_rows(true_costs, pred_costs.size(), n, "true_costs");
  check_rows(true_sols, pred_costs.size(), n, "true_sols");
  double denom = 0.0;
  for (std::size_t i = 0; i < true_costs.size(); ++i) {
    denom += std::abs(dot<double>(true_costs[i], true_sols[i]));
  }
  if (!(denom > 0.0)) {
    throw UndefinedMetricError(
        "normalized regret is undefined: every optimal objective is zero");
  }
  const std::vector<SolveResult> pred = solve_costs(pred_costs, feasible_set, opts);
  Regret r;
  r.per_instance.resize(pred_costs.size());
  double num = 0.0;
  for (std::size_t i = 0; i < pred_costs.size(); ++i) {
    r.per_instance[i] = dot<double>(true_costs[i], pred[i].x) -
                        dot<double>(true_costs[i], true_sols[i]);
    num += r.per_instance[i];
  }
  r.value = num / denom;
  return r;
}

Regret normalized_regret(const CostBatch& pred_costs,
                         const CostBatch& true_costs,
                         const LpProblem& feasible_set,
                         const SolverOptions& opts) {
  const std::vector<SolveResult> truth = solve_costs(true_costs, feasible_set, opts);
  CostBatch sols(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) sols[i] = truth[i].x;
  return normalized_regret(pred_costs, true_costs, sols, feasible_set, opts);
}

}  // namespace lpfom
