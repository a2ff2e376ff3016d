#ifndef LPFOM_PROBLEM_H_
#define LPFOM_PROBLEM_H_

#include <limits>
#include <string>
#include <vector>

#include "lpfom/linalg.h"

namespace lpfom {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// min c'x  s.t.  A x = b,  G x >= h,  l <= x <= u.
//
// A and G may be stored in either layout; `storage` decides the layout of the
// stacked constraint matrix the solver iterates on. Bounds may be infinite;
// every other numeric field must be finite.
struct LpProblem {
  std::vector<double> c;
  ConstraintMatrix A;
  std::vector<double> b;
  ConstraintMatrix G;
  std::vector<double> h;
  std::vector<double> l;
  std::vector<double> u;
  Storage storage = Storage::kSparseCsr;
  // Constant added to every reported objective value.
  double objective_offset = 0.0;
  std::string name;

  int num_variables() const { return static_cast<int>(c.size()); }
  int num_equalities() const { return A.rows(); }
  int num_inequalities() const { return G.rows(); }
};

// Builds an LP from dense row-major blocks. Empty `a_rows` / `g_rows` mean no
// equality / inequality constraints.
LpProblem make_dense_problem(std::vector<double> c,
                             const std::vector<std::vector<double>>& a_rows,
                             std::vector<double> b,
                             const std::vector<std::vector<double>>& g_rows,
                             std::vector<double> h, std::vector<double> l,
                             std::vector<double> u,
                             Storage storage = Storage::kDense);

// Every violation found in `p`; an empty list means the problem is valid.
std::vector<std::string> validate_problem(const LpProblem& p);
// Throws ValidationError listing all violations.
void ensure_valid(const LpProblem& p);

// The saddle-point data min_{x in X} max_{y in Y} c'x - y'Kx + q'y with
// K = [G; A], q = (h; b), X = [l, u], Y = {y : y[0:m1] >= 0}.
template <typename T>
struct BasicSaddleForm {
  Matrix<T> K;
  std::vector<T> q;
  std::vector<T> c;
  std::vector<T> l;
  std::vector<T> u;
  int num_inequalities = 0;
  double objective_offset = 0.0;

  int num_variables() const { return static_cast<int>(c.size()); }
  int num_constraints() const { return static_cast<int>(q.size()); }

  template <typename U>
  BasicSaddleForm<U> Cast() const {
    BasicSaddleForm<U> s;
    s.K = K.template Cast<U>();
    s.q.assign(q.begin(), q.end());
    s.c.assign(c.begin(), c.end());
    s.l.assign(l.begin(), l.end());
    s.u.assign(u.begin(), u.end());
    s.num_inequalities = num_inequalities;
    s.objective_offset = objective_offset;
    return s;
  }
};

using SaddleForm = BasicSaddleForm<double>;

// Throws ValidationError when `p` is invalid.
SaddleForm build_saddle_form(const LpProblem& p);

}  // namespace lpfom

#endif  // LPFOM_PROBLEM_H_
