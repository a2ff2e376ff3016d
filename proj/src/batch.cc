#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>

#include "lpfom/errors.h"
#include "lpfom/solver.h"
#include "solver_internal.h"

namespace lpfom {

std::vector<SolveResult> batch_solve(std::span<const LpProblem> problems,
                                     const SolverOptions& opts,
                                     std::span<const WarmStart> warm,
                                     unsigned workers) {
  validate_options(opts);
  if (problems.empty()) return {};
  if (!warm.empty() && warm.size() != problems.size()) {
    throw DimensionError("warm-start list must be empty or match the batch");
  }
  const LpProblem& first = problems[0];
  bool shared = true;
  for (std::size_t i = 1; i < problems.size(); ++i) {
    const LpProblem& p = problems[i];
    if (p.num_variables() != first.num_variables() ||
        p.num_inequalities() != first.num_inequalities() ||
        p.num_equalities() != first.num_equalities()) {
      throw BatchShapeError(
          i, "shape (n=" + std::to_string(p.num_variables()) +
                 ", m1=" + std::to_string(p.num_inequalities()) +
                 ", m2=" + std::to_string(p.num_equalities()) +
                 ") differs from member 0 (n=" +
                 std::to_string(first.num_variables()) +
                 ", m1=" + std::to_string(first.num_inequalities()) +
                 ", m2=" + std::to_string(first.num_equalities()) + ")");
    }
    shared = shared && p.storage == first.storage && p.A == first.A &&
             p.G == first.G;
  }

  // The preconditioner is a pure function of K, so sharing it cannot change
  // any result.
  std::optional<internal::Preconditioner> common;
  if (shared) {
    common = internal::make_preconditioner(build_saddle_form(first).K, opts);
  }

  const std::size_t count = problems.size();
  std::vector<SolveResult> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const SaddleForm sf = build_saddle_form(problems[i]);
        const WarmStart ws = warm.empty() ? WarmStart{} : warm[i];
        if (common) {
          results[i] = internal::solve_prepared(sf, *common, opts, ws);
        } else {
          results[i] = internal::solve_prepared(
              sf, internal::make_preconditioner(sf.K, opts), opts, ws);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned n = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, count));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const BatchMemberError&) {
      throw;
    } catch (const Error& e) {
      throw BatchMemberError(i, e.what());
    }
  }
  return results;
}

}  // namespace lpfom
