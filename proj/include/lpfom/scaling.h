#ifndef LPFOM_SCALING_H_
#define LPFOM_SCALING_H_

#include <utility>
#include <vector>

#include "lpfom/linalg.h"
#include "lpfom/problem.h"

namespace lpfom {

// Diagonal preconditioner: scaled K = diag(row_scale) K diag(col_scale).
// Scaled data: c = D_c c, q = D_r q, l = l / D_c, u = u / D_c.
struct ScalingInfo {
  std::vector<double> row_scale;
  std::vector<double> col_scale;

  static ScalingInfo Identity(int rows, int cols);
};

struct ScaledMatrix {
  ConstraintMatrix matrix;
  ScalingInfo scaling;
};

// Ruiz equilibration: each pass divides every row and column by the square
// root of its infinity norm (both norms taken before the pass). Zero rows and
// columns keep unit scale. Requires iters >= 1.
ScaledMatrix ruiz_scale(const ConstraintMatrix& k, int iters);

// Pock-Chambolle diagonal scaling: row i is divided by
// sqrt(sum_j |K_ij|^(2 - alpha)) and column j by sqrt(sum_i |K_ij|^alpha).
// Requires alpha in [0, 2].
ScaledMatrix pock_chambolle_scale(const ConstraintMatrix& k,
                                  double alpha = 1.0);

// Entrywise product; `first` is applied before `second`.
ScalingInfo compose(const ScalingInfo& first, const ScalingInfo& second);

inline constexpr int kDefaultRuizIterations = 10;
inline constexpr double kDefaultPockChambolleAlpha = 1.0;

// Ruiz (skipped when ruiz_iterations == 0) followed by Pock-Chambolle.
ScaledMatrix precondition_matrix(const ConstraintMatrix& k,
                                 int ruiz_iterations = kDefaultRuizIterations,
                                 double alpha = kDefaultPockChambolleAlpha);

// Scales every piece of `sf`, recomputing the scaled matrix from sf.K.
SaddleForm apply_scaling(const SaddleForm& sf, const ScalingInfo& s);
// Same, but takes the already-scaled matrix (e.g. from precondition_matrix).
SaddleForm apply_scaling(const SaddleForm& sf, const ScaledMatrix& scaled);

// (x, y) = (D_c x_scaled, D_r y_scaled).
std::pair<std::vector<double>, std::vector<double>> unscale_solution(
    const std::vector<double>& x_scaled, const std::vector<double>& y_scaled,
    const ScalingInfo& s);
// Inverse of unscale_solution.
std::pair<std::vector<double>, std::vector<double>> scale_solution(
    const std::vector<double>& x, const std::vector<double>& y,
    const ScalingInfo& s);

}  // namespace lpfom

#endif  // LPFOM_SCALING_H_
