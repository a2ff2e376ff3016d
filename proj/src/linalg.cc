#include "lpfom/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "lpfom/errors.h"

namespace lpfom {
namespace {

void CheckLength(std::size_t actual, std::size_t expected, const char* what) {
  if (actual != expected) {
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(expected) + ", got " +
                         std::to_string(actual));
  }
}

}  // namespace

template <typename T>
Matrix<T> Matrix<T>::Dense(int rows, int cols, std::vector<T> row_major) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  CheckLength(row_major.size(),
              static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              "dense matrix data");
  Matrix m;
  m.storage_ = Storage::kDense;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dense_ = std::move(row_major);
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::Csr(int rows, int cols, std::vector<std::int64_t> row_ptr,
                         std::vector<int> col_idx, std::vector<T> values) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  CheckLength(row_ptr.size(), static_cast<std::size_t>(rows) + 1,
              "CSR row pointers");
  CheckLength(values.size(), col_idx.size(), "CSR values");
  if (row_ptr.front() != 0 ||
      row_ptr.back() != static_cast<std::int64_t>(col_idx.size())) {
    throw DimensionError("CSR row pointers must span [0, nnz]");
  }
  for (int i = 0; i < rows; ++i) {
    if (row_ptr[i + 1] < row_ptr[i]) {
      throw DimensionError("CSR row pointers must be nondecreasing");
    }
    for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] < 0 || col_idx[k] >= cols) {
        throw DimensionError("CSR column index out of range");
      }
      if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1]) {
        throw DimensionError(
            "CSR column indices must be strictly increasing within a row");
      }
      if (values[k] == T(0)) {
        throw DimensionError("CSR must not store explicit zeros");
      }
    }
  }
  Matrix m;
  m.storage_ = Storage::kSparseCsr;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_ = std::move(row_ptr);
  m.col_idx_ = std::move(col_idx);
  m.values_ = std::move(values);
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::FromTriplets(int rows, int cols,
                                  std::span<const Triplet> triplets,
                                  Storage storage) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw DimensionError("triplet (" + std::to_string(t.row) + ", " +
                           std::to_string(t.col) + ") outside " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  if (storage == Storage::kDense) {
    std::vector<T> data(static_cast<std::size_t>(rows) * cols, T(0));
    for (const Triplet& t : triplets) {
      data[static_cast<std::size_t>(t.row) * cols + t.col] +=
          static_cast<T>(t.value);
    }
    return Dense(rows, cols, std::move(data));
  }
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  std::vector<std::int64_t> row_ptr(static_cast<std::size_t>(rows) + 1, 0);
  std::vector<int> col_idx;
  std::vector<T> values;
  col_idx.reserve(sorted.size());
  values.reserve(sorted.size());
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i) {
    while (k < sorted.size() && sorted[k].row == i) {
      const int j = sorted[k].col;
      T sum = T(0);
      while (k < sorted.size() && sorted[k].row == i && sorted[k].col == j) {
        sum += static_cast<T>(sorted[k].value);
        ++k;
      }
      if (sum != T(0)) {
        col_idx.push_back(j);
        values.push_back(sum);
      }
    }
    row_ptr[i + 1] = static_cast<std::int64_t>(col_idx.size());
  }
  return Csr(rows, cols, std::move(row_ptr), std::move(col_idx),
             std::move(values));
}

template <typename T>
Matrix<T> Matrix<T>::Zero(int rows, int cols, Storage storage) {
  return FromTriplets(rows, cols, {}, storage);
}

template <typename T>
Matrix<T> Matrix<T>::Identity(int n, Storage storage) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return FromTriplets(n, n, t, storage);
}

template <typename T>
std::int64_t Matrix<T>::stored_entries() const {
  return storage_ == Storage::kDense ? static_cast<std::int64_t>(dense_.size())
                                     : static_cast<std::int64_t>(values_.size());
}

template <typename T>
void Matrix<T>::Multiply(std::span<const T> v, std::span<T> out) const {
  CheckLength(v.size(), static_cast<std::size_t>(cols_), "matvec input");
  CheckLength(out.size(), static_cast<std::size_t>(rows_), "matvec output");
  if (storage_ == Storage::kDense) {
    for (int i = 0; i < rows_; ++i) {
      const T* row = dense_.data() + static_cast<std::size_t>(i) * cols_;
      T sum = T(0);
      for (int j = 0; j < cols_; ++j) sum += row[j] * v[j];
      out[i] = sum;
    }
  } else {
    for (int i = 0; i < rows_; ++i) {
      T sum = T(0);
      for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        sum += values_[k] * v[col_idx_[k]];
      }
      out[i] = sum;
    }
  }
}

template <typename T>
void Matrix<T>::MultiplyTranspose(std::span<const T> v,
                                  std::span<T> out) const {
  CheckLength(v.size(), static_cast<std::size_t>(rows_),
              "transpose matvec input");
  CheckLength(out.size(), static_cast<std::size_t>(cols_),
              "transpose matvec output");
  std::fill(out.begin(), out.end(), T(0));
  if (storage_ == Storage::kDense) {
    for (int i = 0; i < rows_; ++i) {
      const T* row = dense_.data() + static_cast<std::size_t>(i) * cols_;
      const T vi = v[i];
      if (vi == T(0)) continue;
      for (int j = 0; j < cols_; ++j) out[j] += row[j] * vi;
    }
  } else {
    for (int i = 0; i < rows_; ++i) {
      const T vi = v[i];
      if (vi == T(0)) continue;
      for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        out[col_idx_[k]] += values_[k] * vi;
      }
    }
  }
}

template <typename T>
T Matrix<T>::At(int row, int col) const {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) {
    throw DimensionError("matrix index out of range");
  }
  if (storage_ == Storage::kDense) {
    return dense_[static_cast<std::size_t>(row) * cols_ + col];
  }
  const auto begin = col_idx_.begin() + row_ptr_[row];
  const auto end = col_idx_.begin() + row_ptr_[row + 1];
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return T(0);
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

template <typename T>
Matrix<T> Matrix<T>::ScaleRowsAndCols(std::span<const T> row_scale,
                                      std::span<const T> col_scale) const {
  CheckLength(row_scale.size(), static_cast<std::size_t>(rows_), "row scale");
  CheckLength(col_scale.size(), static_cast<std::size_t>(cols_), "col scale");
  Matrix m = *this;
  if (storage_ == Storage::kDense) {
    for (int i = 0; i < rows_; ++i) {
      T* row = m.dense_.data() + static_cast<std::size_t>(i) * cols_;
      for (int j = 0; j < cols_; ++j) row[j] = row_scale[i] * row[j] * col_scale[j];
    }
  } else {
    for (int i = 0; i < rows_; ++i) {
      for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        m.values_[k] = row_scale[i] * m.values_[k] * col_scale[col_idx_[k]];
      }
    }
  }
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::RowBlock(int begin, int end) const {
  if (begin < 0 || end > rows_ || begin > end) {
    throw DimensionError("row block out of range");
  }
  if (storage_ == Storage::kDense) {
    std::vector<T> data(dense_.begin() + static_cast<std::size_t>(begin) * cols_,
                        dense_.begin() + static_cast<std::size_t>(end) * cols_);
    return Dense(end - begin, cols_, std::move(data));
  }
  std::vector<std::int64_t> ptr;
  ptr.reserve(end - begin + 1);
  const std::int64_t offset = row_ptr_[begin];
  for (int i = begin; i <= end; ++i) ptr.push_back(row_ptr_[i] - offset);
  std::vector<int> idx(col_idx_.begin() + row_ptr_[begin],
                       col_idx_.begin() + row_ptr_[end]);
  std::vector<T> vals(values_.begin() + row_ptr_[begin],
                      values_.begin() + row_ptr_[end]);
  return Csr(end - begin, cols_, std::move(ptr), std::move(idx),
             std::move(vals));
}

template <typename T>
Matrix<T> Matrix<T>::StackRows(const Matrix& top, const Matrix& bottom,
                               Storage storage) {
  if (top.cols_ != bottom.cols_) {
    throw DimensionError("stacked blocks have " + std::to_string(top.cols_) +
                         " and " + std::to_string(bottom.cols_) + " columns");
  }
  const Matrix a = top.WithStorage(storage);
  const Matrix b = bottom.WithStorage(storage);
  const int rows = a.rows_ + b.rows_;
  if (storage == Storage::kDense) {
    std::vector<T> data = a.dense_;
    data.insert(data.end(), b.dense_.begin(), b.dense_.end());
    return Dense(rows, a.cols_, std::move(data));
  }
  std::vector<std::int64_t> ptr = a.row_ptr_;
  const std::int64_t offset = ptr.back();
  for (std::size_t i = 1; i < b.row_ptr_.size(); ++i) {
    ptr.push_back(b.row_ptr_[i] + offset);
  }
  std::vector<int> idx = a.col_idx_;
  idx.insert(idx.end(), b.col_idx_.begin(), b.col_idx_.end());
  std::vector<T> vals = a.values_;
  vals.insert(vals.end(), b.values_.begin(), b.values_.end());
  return Csr(rows, a.cols_, std::move(ptr), std::move(idx), std::move(vals));
}

template <typename T>
Matrix<T> Matrix<T>::WithStorage(Storage storage) const {
  if (storage == storage_) return *this;
  std::vector<Triplet> t = ToTriplets();
  return FromTriplets(rows_, cols_, t, storage);
}

template <typename T>
Matrix<T> Matrix<T>::Transpose() const {
  std::vector<Triplet> t = ToTriplets();
  for (Triplet& e : t) std::swap(e.row, e.col);
  return FromTriplets(cols_, rows_, t, storage_);
}

template <typename T>
template <typename U>
Matrix<U> Matrix<T>::Cast() const {
  Matrix<U> m;
  m.storage_ = storage_;
  m.rows_ = rows_;
  m.cols_ = cols_;
  m.dense_.assign(dense_.begin(), dense_.end());
  m.row_ptr_ = row_ptr_;
  m.col_idx_ = col_idx_;
  m.values_.assign(values_.begin(), values_.end());
  return m;
}

template <typename T>
std::vector<Triplet> Matrix<T>::ToTriplets() const {
  std::vector<Triplet> t;
  ForEachNonzero([&](int i, int j, T v) {
    t.push_back({i, j, static_cast<double>(v)});
  });
  return t;
}

template <typename T>
std::vector<T> Matrix<T>::ToDenseRowMajor() const {
  if (storage_ == Storage::kDense) return dense_;
  std::vector<T> data(static_cast<std::size_t>(rows_) * cols_, T(0));
  ForEachNonzero([&](int i, int j, T v) {
    data[static_cast<std::size_t>(i) * cols_ + j] = v;
  });
  return data;
}

template class Matrix<double>;
template class Matrix<float>;
template Matrix<float> Matrix<double>::Cast<float>() const;
template Matrix<double> Matrix<float>::Cast<double>() const;
template Matrix<double> Matrix<double>::Cast<double>() const;

template <typename T>
std::vector<T> matvec(const Matrix<T>& m, std::span<const T> v) {
  std::vector<T> out(m.rows());
  m.Multiply(v, out);
  return out;
}

template <typename T>
std::vector<T> matvec_transpose(const Matrix<T>& m, std::span<const T> v) {
  std::vector<T> out(m.cols());
  m.MultiplyTranspose(v, out);
  return out;
}

template std::vector<double> matvec(const Matrix<double>&,
                                    std::span<const double>);
template std::vector<float> matvec(const Matrix<float>&,
                                   std::span<const float>);
template std::vector<double> matvec_transpose(const Matrix<double>&,
                                              std::span<const double>);
template std::vector<float> matvec_transpose(const Matrix<float>&,
                                             std::span<const float>);

template <typename T>
double dot(std::span<const T> a, std::span<const T> b) {
  CheckLength(b.size(), a.size(), "dot operand");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

template <typename T>
double norm2(std::span<const T> a) {
  return std::sqrt(dot(a, a));
}

template <typename T>
double norm_inf(std::span<const T> a) {
  double m = 0.0;
  for (const T v : a) m = std::max(m, std::abs(static_cast<double>(v)));
  return m;
}

template double dot(std::span<const double>, std::span<const double>);
template double dot(std::span<const float>, std::span<const float>);
template double norm2(std::span<const double>);
template double norm2(std::span<const float>);
template double norm_inf(std::span<const double>);
template double norm_inf(std::span<const float>);

SpectralNormEstimate estimate_spectral_norm(const ConstraintMatrix& m,
                                            double tol, int max_iter,
                                            std::uint64_t seed) {
  SpectralNormEstimate result;
  bool any_nonzero = false;
  m.ForEachNonzero([&](int, int, double) { any_nonzero = true; });
  if (!any_nonzero) {
    result.zero_matrix = true;
    result.converged = true;
    return result;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(m.cols());
  for (double& e : v) e = normal(rng);
  double nv = norm2<double>(v);
  for (double& e : v) e /= nv;

  std::vector<double> w(m.rows());
  std::vector<double> u(m.cols());
  for (int it = 1; it <= max_iter; ++it) {
    m.Multiply(v, w);
    m.MultiplyTranspose(w, u);
    const double lambda = dot<double>(w, w);
    result.iterations = it;
    result.value = std::sqrt(lambda);
    const double nu = norm2<double>(u);
    if (nu == 0.0) break;
    double residual = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double r = u[j] - lambda * v[j];
      residual += r * r;
    }
    residual = std::sqrt(residual) / lambda;
    for (std::size_t j = 0; j < u.size(); ++j) v[j] = u[j] / nu;
    if (residual <= tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

RowColNorms row_col_inf_norms(const ConstraintMatrix& m) {
  RowColNorms n{std::vector<double>(m.rows(), 0.0),
                std::vector<double>(m.cols(), 0.0)};
  m.ForEachNonzero([&](int i, int j, double v) {
    const double a = std::abs(v);
    n.rows[i] = std::max(n.rows[i], a);
    n.cols[j] = std::max(n.cols[j], a);
  });
  return n;
}

RowColNorms row_col_p_norms(const ConstraintMatrix& m, double p) {
  if (std::isinf(p) && p > 0) return row_col_inf_norms(m);
  if (!(p > 0.0)) throw ParameterError("p-norm exponent must be positive");
  RowColNorms n{std::vector<double>(m.rows(), 0.0),
                std::vector<double>(m.cols(), 0.0)};
  m.ForEachNonzero([&](int i, int j, double v) {
    const double a = std::pow(std::abs(v), p);
    n.rows[i] += a;
    n.cols[j] += a;
  });
  for (double& e : n.rows) e = std::pow(e, 1.0 / p);
  for (double& e : n.cols) e = std::pow(e, 1.0 / p);
  return n;
}

}  // namespace lpfom
