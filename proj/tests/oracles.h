#ifndef LPFOM_TESTS_ORACLES_H_
#define LPFOM_TESTS_ORACLES_H_

// Reference implementations the tests compare against. None of them call
// into the solver; they rely on the LpProblem fields and dense arithmetic.

#include <optional>
#include <vector>

#include "lpfom/problem.h"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const lpfom::ConstraintMatrix& m);
std::vector<double> matvec(const Dense& m, const std::vector<double>& v);
std::vector<double> matvec_t(const Dense& m, const std::vector<double>& v);

// Largest singular value via cyclic Jacobi on M'M.
double spectral_norm(const Dense& m);

// Solves a square system by Gaussian elimination with partial pivoting;
// empty when the matrix is (numerically) singular.
std::optional<std::vector<double>> solve_linear(Dense a, std::vector<double> b);

struct LpSolution {
  double objective = 0.0;
  std::vector<double> x;
};

// min c'x, Gx >= h, l <= x <= u (finite bounds, no equalities) by
// enumerating bounded-variable bases of [G, -I]: nonbasic columns sit at the
// bound their reduced cost selects (both bounds on a zero reduced cost), and
// the first primal-feasible basis found is optimal. The objective excludes the
// problem's offset.
std::optional<LpSolution> basis_enumeration(const lpfom::LpProblem& p);

// Vertex enumeration for tiny bounded LPs with any constraint mix: every
// choice of n active constraints (equalities always active) is solved and the
// best feasible point kept.
std::optional<LpSolution> vertex_enumeration(const lpfom::LpProblem& p);

// Shortest path on the 8-connected k x k grid from the top-left to the
// bottom-right cell, paying each entered cell's cost.
double grid_dijkstra(int k, const std::vector<double>& costs);
// Same value by enumerating every simple path (k <= 3).
double grid_path_enumeration(int k, const std::vector<double>& costs);

struct Kkt {
  double pres = 0.0;
  double dres = 0.0;
  double pobj = 0.0;
  double dobj = 0.0;
  double gap = 0.0;
};

// Residuals straight from A, b, G, h, l, u, c.
Kkt kkt(const lpfom::LpProblem& p, const std::vector<double>& x,
        const std::vector<double>& y);
bool passes_termination(const lpfom::LpProblem& p, const Kkt& k, double eps_abs,
                        double eps_rel);

}  // namespace oracle

#endif  // LPFOM_TESTS_ORACLES_H_
