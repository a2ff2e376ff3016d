#ifndef LPFOM_SRC_SOLVER_INTERNAL_H_
#define LPFOM_SRC_SOLVER_INTERNAL_H_

#include "lpfom/scaling.h"
#include "lpfom/solver.h"

namespace lpfom::internal {

// Everything that depends on K alone.
struct Preconditioner {
  ScaledMatrix scaled;
  double spectral_norm = 0.0;
};

Preconditioner make_preconditioner(const ConstraintMatrix& k,
                                   const SolverOptions& opts);

// solve() after validation, with the saddle form and preconditioner given.
SolveResult solve_prepared(const SaddleForm& sf, const Preconditioner& pre,
                           const SolverOptions& opts, const WarmStart& warm);

}  // namespace lpfom::internal

#endif  // LPFOM_SRC_SOLVER_INTERNAL_H_
