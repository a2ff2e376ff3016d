#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lpfom/errors.h"
#include "lpfom/linalg.h"
#include "oracles.h"

using lpfom::ConstraintMatrix;
using lpfom::Storage;
using lpfom::Triplet;

namespace {

ConstraintMatrix random_sparse(int rows, int cols, double density,
                               std::uint64_t seed, Storage storage) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::bernoulli_distribution keep(density);
  std::vector<Triplet> t;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (keep(rng)) t.push_back({i, j, val(rng)});
    }
  }
  return ConstraintMatrix::FromTriplets(rows, cols, t, storage);
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (double& e : v) e = d(rng);
  return v;
}

}  // namespace

TEST(Matvec, Identity) {
  auto m = ConstraintMatrix::Identity(3, Storage::kSparseCsr);
  std::vector<double> v{1, 2, 3};
  EXPECT_EQ(lpfom::matvec<double>(m, v), v);
}

TEST(Matvec, SmallDense) {
  auto m = ConstraintMatrix::Dense(2, 2, {1, 2, 3, 4});
  std::vector<double> v{1, 1};
  EXPECT_EQ(lpfom::matvec<double>(m, v), (std::vector<double>{3, 7}));
  EXPECT_EQ(lpfom::matvec_transpose<double>(m, v), (std::vector<double>{4, 6}));
}

TEST(Matvec, SparseMatchesDenseOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto m = random_sparse(20, 30, 0.2, seed, Storage::kSparseCsr);
    auto d = oracle::to_dense(m);
    auto v = random_vector(30, seed + 100);
    auto got = lpfom::matvec<double>(m, v);
    auto want = oracle::matvec(d, v);
    double scale = 0.0;
    for (double w : want) scale = std::max(scale, std::abs(w));
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_LE(std::abs(got[i] - want[i]), 1e-12 * scale);
    }
    auto w = random_vector(20, seed + 200);
    auto gt = lpfom::matvec_transpose<double>(m, w);
    auto wt = oracle::matvec_t(d, w);
    for (std::size_t j = 0; j < gt.size(); ++j) EXPECT_NEAR(gt[j], wt[j], 1e-12);
  }
}

TEST(Matvec, DenseAndSparseStorageAgree) {
  auto s = random_sparse(15, 12, 0.3, 9, Storage::kSparseCsr);
  auto d = s.WithStorage(Storage::kDense);
  auto v = random_vector(12, 4);
  auto a = lpfom::matvec<double>(s, v);
  auto b = lpfom::matvec<double>(d, v);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE(std::abs(a[i] - b[i]), 8 * 2.2e-16 * (1.0 + std::abs(b[i])));
  }
}

TEST(Matvec, LengthMismatchThrows) {
  auto m = ConstraintMatrix::Identity(3, Storage::kDense);
  std::vector<double> v{1, 2};
  EXPECT_THROW(lpfom::matvec<double>(m, v), lpfom::DimensionError);
  EXPECT_THROW(lpfom::matvec_transpose<double>(m, v), lpfom::DimensionError);
}

TEST(Matvec, AdjointConsistency) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto m = random_sparse(25, 18, 0.15, seed, seed % 2 ? Storage::kDense
                                                         : Storage::kSparseCsr);
    auto v = random_vector(18, seed + 1);
    auto w = random_vector(25, seed + 2);
    const double lhs = lpfom::dot<double>(lpfom::matvec<double>(m, v), w);
    const double rhs = lpfom::dot<double>(v, lpfom::matvec_transpose<double>(m, w));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Matvec, Deterministic) {
  auto m = random_sparse(40, 40, 0.1, 3, Storage::kSparseCsr);
  auto v = random_vector(40, 5);
  EXPECT_EQ(lpfom::matvec<double>(m, v), lpfom::matvec<double>(m, v));
  EXPECT_EQ(lpfom::matvec_transpose<double>(m, v),
            lpfom::matvec_transpose<double>(m, v));
}

TEST(Csr, RejectsBrokenInvariants) {
  EXPECT_THROW(ConstraintMatrix::Csr(1, 2, {0, 2}, {1, 0}, {1.0, 2.0}),
               lpfom::Error);
  EXPECT_THROW(ConstraintMatrix::Csr(1, 2, {0, 1}, {0}, {0.0}), lpfom::Error);
  EXPECT_THROW(ConstraintMatrix::Csr(2, 2, {0, 1, 0}, {0}, {1.0}), lpfom::Error);
  EXPECT_THROW(ConstraintMatrix::Csr(1, 2, {0, 1}, {5}, {1.0}), lpfom::Error);
}

TEST(Csr, TripletsSumDuplicatesAndDropZeros) {
  std::vector<Triplet> t{{0, 0, 1.0}, {0, 0, 2.0}, {1, 1, 1.0}, {1, 1, -1.0}};
  auto m = ConstraintMatrix::FromTriplets(2, 2, t, Storage::kSparseCsr);
  EXPECT_EQ(m.stored_entries(), 1);
  EXPECT_EQ(m.At(0, 0), 3.0);
  EXPECT_EQ(m.At(1, 1), 0.0);
}

TEST(Matrix, StackAndSplitRoundTrip) {
  auto g = random_sparse(4, 6, 0.4, 1, Storage::kSparseCsr);
  auto a = random_sparse(3, 6, 0.4, 2, Storage::kSparseCsr);
  auto k = ConstraintMatrix::StackRows(g, a, Storage::kSparseCsr);
  EXPECT_EQ(k.RowBlock(0, 4), g);
  EXPECT_EQ(k.RowBlock(4, 7), a);
  EXPECT_EQ(k.Transpose().Transpose(), k);
}

TEST(SpectralNorm, Diagonal) {
  auto m = ConstraintMatrix::Dense(2, 2, {3, 0, 0, 1});
  auto e = lpfom::estimate_spectral_norm(m, 1e-6);
  EXPECT_NEAR(e.value, 3.0, 3e-6);
  EXPECT_TRUE(e.converged);
}

TEST(SpectralNorm, NilpotentBlock) {
  auto m = ConstraintMatrix::Dense(2, 2, {0, 1, 0, 0});
  EXPECT_NEAR(lpfom::estimate_spectral_norm(m, 1e-6).value, 1.0, 1e-6);
}

TEST(SpectralNorm, ZeroMatrixFlag) {
  auto m = ConstraintMatrix::Zero(3, 4, Storage::kSparseCsr);
  auto e = lpfom::estimate_spectral_norm(m);
  EXPECT_EQ(e.value, 0.0);
  EXPECT_TRUE(e.zero_matrix);
}

TEST(SpectralNorm, RandomAgainstJacobiOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto m = random_sparse(10, 10, 0.6, seed + 30, Storage::kDense);
    const double want = oracle::spectral_norm(oracle::to_dense(m));
    const double tol = 1e-6;
    auto e = lpfom::estimate_spectral_norm(m, tol, 100000, seed);
    EXPECT_LE(e.value, want * (1 + 1e-12));
    if (e.converged) {
      EXPECT_GE(e.value, (1 - 10 * tol) * want);
    }
    EXPECT_NEAR(e.value, want, 1e-4 * want);
  }
}

TEST(SpectralNorm, TransposeAgrees) {
  const double tol = 1e-6;
  auto m = random_sparse(12, 7, 0.5, 77, Storage::kSparseCsr);
  const double a = lpfom::estimate_spectral_norm(m, tol).value;
  const double b = lpfom::estimate_spectral_norm(m.Transpose(), tol).value;
  EXPECT_LE(std::abs(a - b), 2 * tol * std::max(a, b));
}

TEST(Norms, InfNorms) {
  auto m = ConstraintMatrix::Dense(2, 2, {4, 0, 0, 1});
  auto n = lpfom::row_col_inf_norms(m);
  EXPECT_EQ(n.rows, (std::vector<double>{4, 1}));
  EXPECT_EQ(n.cols, (std::vector<double>{4, 1}));
}

TEST(Norms, OneNorms) {
  auto m = ConstraintMatrix::Dense(2, 2, {1, 1, 1, 1});
  auto n = lpfom::row_col_p_norms(m, 1.0);
  EXPECT_EQ(n.rows, (std::vector<double>{2, 2}));
  EXPECT_EQ(n.cols, (std::vector<double>{2, 2}));
}

TEST(Norms, SparseMatchesDenseScan) {
  auto m = random_sparse(17, 11, 0.2, 5, Storage::kSparseCsr);
  auto d = oracle::to_dense(m);
  auto n = lpfom::row_col_inf_norms(m);
  for (int i = 0; i < 17; ++i) {
    double r = 0.0;
    for (int j = 0; j < 11; ++j) r = std::max(r, std::abs(d[i][j]));
    EXPECT_EQ(n.rows[i], r);
  }
  for (int j = 0; j < 11; ++j) {
    double c = 0.0;
    for (int i = 0; i < 17; ++i) c = std::max(c, std::abs(d[i][j]));
    EXPECT_EQ(n.cols[j], c);
  }
}

TEST(Norms, ZeroRowGivesZero) {
  auto m = ConstraintMatrix::Dense(2, 2, {0, 0, 2, 0});
  auto n = lpfom::row_col_p_norms(m, 2.0);
  EXPECT_EQ(n.rows[0], 0.0);
  EXPECT_EQ(n.cols[1], 0.0);
  EXPECT_THROW(lpfom::row_col_p_norms(m, 0.0), lpfom::ParameterError);
}
