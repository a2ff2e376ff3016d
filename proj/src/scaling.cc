#include "lpfom/scaling.h"

#include <cmath>
#include <string>

#include "lpfom/errors.h"

namespace lpfom {
namespace {

void CheckDims(const SaddleForm& sf, const ScalingInfo& s) {
  if (s.row_scale.size() != static_cast<std::size_t>(sf.K.rows()) ||
      s.col_scale.size() != static_cast<std::size_t>(sf.K.cols())) {
    throw DimensionError("scaling is " + std::to_string(s.row_scale.size()) +
                         "x" + std::to_string(s.col_scale.size()) +
                         ", matrix is " + std::to_string(sf.K.rows()) + "x" +
                         std::to_string(sf.K.cols()));
  }
}

double InverseSqrtOrOne(double norm) {
  return norm > 0.0 ? 1.0 / std::sqrt(norm) : 1.0;
}

// sum |K_ij|^e over nonzeros, with |K_ij|^0 = 1.
RowColNorms PowerSums(const ConstraintMatrix& k, double e) {
  RowColNorms s{std::vector<double>(k.rows(), 0.0),
                std::vector<double>(k.cols(), 0.0)};
  k.ForEachNonzero([&](int i, int j, double v) {
    const double a = e == 0.0 ? 1.0 : std::pow(std::abs(v), e);
    s.rows[i] += a;
    s.cols[j] += a;
  });
  return s;
}

}  // namespace

ScalingInfo ScalingInfo::Identity(int rows, int cols) {
  return {std::vector<double>(rows, 1.0), std::vector<double>(cols, 1.0)};
}

ScaledMatrix ruiz_scale(const ConstraintMatrix& k, int iters) {
  if (iters < 1) throw ParameterError("Ruiz scaling needs at least one pass");
  ScaledMatrix out{k, ScalingInfo::Identity(k.rows(), k.cols())};
  std::vector<double> row_factor(k.rows());
  std::vector<double> col_factor(k.cols());
  for (int it = 0; it < iters; ++it) {
    const RowColNorms norms = row_col_inf_norms(out.matrix);
    for (int i = 0; i < k.rows(); ++i) row_factor[i] = InverseSqrtOrOne(norms.rows[i]);
    for (int j = 0; j < k.cols(); ++j) col_factor[j] = InverseSqrtOrOne(norms.cols[j]);
    out.matrix = out.matrix.ScaleRowsAndCols(row_factor, col_factor);
    for (int i = 0; i < k.rows(); ++i) out.scaling.row_scale[i] *= row_factor[i];
    for (int j = 0; j < k.cols(); ++j) out.scaling.col_scale[j] *= col_factor[j];
  }
  return out;
}

ScaledMatrix pock_chambolle_scale(const ConstraintMatrix& k, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw ParameterError("Pock-Chambolle alpha must lie in [0, 2]");
  }
  const RowColNorms row_sums = PowerSums(k, 2.0 - alpha);
  const RowColNorms col_sums = alpha == 2.0 - alpha ? row_sums : PowerSums(k, alpha);
  ScalingInfo s = ScalingInfo::Identity(k.rows(), k.cols());
  for (int i = 0; i < k.rows(); ++i) s.row_scale[i] = InverseSqrtOrOne(row_sums.rows[i]);
  for (int j = 0; j < k.cols(); ++j) s.col_scale[j] = InverseSqrtOrOne(col_sums.cols[j]);
  ConstraintMatrix scaled = k.ScaleRowsAndCols(s.row_scale, s.col_scale);
  return {std::move(scaled), std::move(s)};
}

ScalingInfo compose(const ScalingInfo& first, const ScalingInfo& second) {
  if (first.row_scale.size() != second.row_scale.size() ||
      first.col_scale.size() != second.col_scale.size()) {
    throw DimensionError("cannot compose scalings of different shapes");
  }
  ScalingInfo s = first;
  for (std::size_t i = 0; i < s.row_scale.size(); ++i) s.row_scale[i] *= second.row_scale[i];
  for (std::size_t j = 0; j < s.col_scale.size(); ++j) s.col_scale[j] *= second.col_scale[j];
  return s;
}

ScaledMatrix precondition_matrix(const ConstraintMatrix& k, int ruiz_iterations,
                                 double alpha) {
  if (ruiz_iterations < 0) throw ParameterError("negative Ruiz iteration count");
  ScaledMatrix ruiz = ruiz_iterations > 0
                          ? ruiz_scale(k, ruiz_iterations)
                          : ScaledMatrix{k, ScalingInfo::Identity(k.rows(), k.cols())};
  ScaledMatrix pc = pock_chambolle_scale(ruiz.matrix, alpha);
  return {std::move(pc.matrix), compose(ruiz.scaling, pc.scaling)};
}

SaddleForm apply_scaling(const SaddleForm& sf, const ScalingInfo& s) {
  CheckDims(sf, s);
  return apply_scaling(sf, ScaledMatrix{sf.K.ScaleRowsAndCols(s.row_scale, s.col_scale), s});
}

SaddleForm apply_scaling(const SaddleForm& sf, const ScaledMatrix& scaled) {
  const ScalingInfo& s = scaled.scaling;
  CheckDims(sf, s);
  SaddleForm out;
  out.K = scaled.matrix;
  out.num_inequalities = sf.num_inequalities;
  out.objective_offset = sf.objective_offset;
  const std::size_t n = sf.c.size();
  out.c.resize(n);
  out.l.resize(n);
  out.u.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.c[j] = s.col_scale[j] * sf.c[j];
    out.l[j] = sf.l[j] / s.col_scale[j];
    out.u[j] = sf.u[j] / s.col_scale[j];
  }
  out.q.resize(sf.q.size());
  for (std::size_t i = 0; i < sf.q.size(); ++i) out.q[i] = s.row_scale[i] * sf.q[i];
  return out;
}

std::pair<std::vector<double>, std::vector<double>> unscale_solution(
    const std::vector<double>& x_scaled, const std::vector<double>& y_scaled,
    const ScalingInfo& s) {
  if (x_scaled.size() != s.col_scale.size() || y_scaled.size() != s.row_scale.size()) {
    throw DimensionError("solution does not match the scaling dimensions");
  }
  std::vector<double> x(x_scaled.size());
  std::vector<double> y(y_scaled.size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = s.col_scale[j] * x_scaled[j];
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = s.row_scale[i] * y_scaled[i];
  return {std::move(x), std::move(y)};
}

std::pair<std::vector<double>, std::vector<double>> scale_solution(
    const std::vector<double>& x, const std::vector<double>& y,
    const ScalingInfo& s) {
  if (x.size() != s.col_scale.size() || y.size() != s.row_scale.size()) {
    throw DimensionError("solution does not match the scaling dimensions");
  }
  std::vector<double> xs(x.size());
  std::vector<double> ys(y.size());
  for (std::size_t j = 0; j < x.size(); ++j) xs[j] = x[j] / s.col_scale[j];
  for (std::size_t i = 0; i < y.size(); ++i) ys[i] = y[i] / s.row_scale[i];
  return {std::move(xs), std::move(ys)};
}

}  // namespace lpfom
