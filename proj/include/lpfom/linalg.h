#ifndef LPFOM_LINALG_H_
#define LPFOM_LINALG_H_

#include <cstdint>
#include <span>
#include <vector>

namespace lpfom {

enum class Storage { kDense, kSparseCsr };

struct Triplet {
  int row;
  int col;
  double value;
};

// Constraint matrix in either row-major dense or CSR layout.
//
// CSR invariants (enforced at construction): row pointers are nondecreasing,
// the last pointer equals nnz, column indices are strictly increasing within
// a row, and no explicit zero is stored. Transposed products scatter over the
// CSR rows instead of materializing a CSC copy.
//
// Every kernel walks rows in index order and accumulates left to right, so
// products are bit-reproducible for a fixed build.
template <typename T>
class Matrix {
 public:
  using Scalar = T;

  // 0x0 dense matrix.
  Matrix() = default;

  static Matrix Dense(int rows, int cols, std::vector<T> row_major);
  static Matrix Csr(int rows, int cols, std::vector<std::int64_t> row_ptr,
                    std::vector<int> col_idx, std::vector<T> values);
  // Duplicate coordinates are summed; zeros are dropped for CSR.
  static Matrix FromTriplets(int rows, int cols,
                             std::span<const Triplet> triplets,
                             Storage storage);
  static Matrix Zero(int rows, int cols, Storage storage);
  static Matrix Identity(int n, Storage storage);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Storage storage() const { return storage_; }
  bool is_dense() const { return storage_ == Storage::kDense; }
  // Stored entries; for dense storage this is rows * cols.
  std::int64_t stored_entries() const;

  // out = M * v.
  void Multiply(std::span<const T> v, std::span<T> out) const;
  // out = M^T * v.
  void MultiplyTranspose(std::span<const T> v, std::span<T> out) const;

  // Calls f(row, col, value) for every nonzero in row-major order.
  template <typename F>
  void ForEachNonzero(F&& f) const {
    if (storage_ == Storage::kDense) {
      for (int i = 0; i < rows_; ++i) {
        const T* row = dense_.data() + static_cast<std::size_t>(i) * cols_;
        for (int j = 0; j < cols_; ++j) {
          if (row[j] != T(0)) f(i, j, row[j]);
        }
      }
    } else {
      for (int i = 0; i < rows_; ++i) {
        for (std::int64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
          f(i, col_idx_[k], values_[k]);
        }
      }
    }
  }

  // Entry lookup; O(log nnz_row) for CSR. Intended for tests and I/O.
  T At(int row, int col) const;

  // Returns diag(row_scale) * M * diag(col_scale); pattern is preserved.
  Matrix ScaleRowsAndCols(std::span<const T> row_scale,
                          std::span<const T> col_scale) const;
  // Rows [begin, end) as a new matrix with the same storage.
  Matrix RowBlock(int begin, int end) const;
  // [top; bottom]; both must have the same column count. The result uses the
  // requested storage.
  static Matrix StackRows(const Matrix& top, const Matrix& bottom,
                          Storage storage);
  Matrix WithStorage(Storage storage) const;
  Matrix Transpose() const;

  template <typename U>
  Matrix<U> Cast() const;

  std::vector<Triplet> ToTriplets() const;
  std::vector<T> ToDenseRowMajor() const;

  // CSR accessors (empty for dense storage).
  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<T>& values() const { return values_; }
  // Dense accessor (empty for CSR storage).
  const std::vector<T>& dense_data() const { return dense_; }

  bool operator==(const Matrix& other) const = default;

 private:
  template <typename U>
  friend class Matrix;

  Storage storage_ = Storage::kDense;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> dense_;
  std::vector<std::int64_t> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<T> values_;
};

using ConstraintMatrix = Matrix<double>;

template <typename T>
std::vector<T> matvec(const Matrix<T>& m, std::span<const T> v);
template <typename T>
std::vector<T> matvec_transpose(const Matrix<T>& m, std::span<const T> v);

struct SpectralNormEstimate {
  double value = 0.0;
  // Set when the matrix has no nonzero entries; value is then 0.
  bool zero_matrix = false;
  bool converged = false;
  int iterations = 0;
};

// Power iteration on M^T M. The Rayleigh-quotient estimate never exceeds the
// true largest singular value (up to rounding). Converged means the relative
// eigenvector residual ||M^T M v - lambda v|| / lambda dropped below tol.
SpectralNormEstimate estimate_spectral_norm(const ConstraintMatrix& m,
                                            double tol = 1e-6,
                                            int max_iter = 5000,
                                            std::uint64_t seed = 0);

struct RowColNorms {
  std::vector<double> rows;
  std::vector<double> cols;
};

RowColNorms row_col_inf_norms(const ConstraintMatrix& m);
// Entrywise p-norms of rows and columns, p in (0, inf]. Zero rows and columns
// have norm 0.
RowColNorms row_col_p_norms(const ConstraintMatrix& m, double p);

// Small dense-vector helpers shared by the solver.
template <typename T>
double dot(std::span<const T> a, std::span<const T> b);
template <typename T>
double norm2(std::span<const T> a);
template <typename T>
double norm_inf(std::span<const T> a);

}  // namespace lpfom

#endif  // LPFOM_LINALG_H_
