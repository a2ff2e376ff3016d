#include "lpfom/problem.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lpfom/errors.h"

namespace lpfom {
namespace {

void CheckFinite(const std::vector<double>& v, const char* name,
                 std::vector<std::string>& out) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      out.push_back(std::string("non-finite value in ") + name + " at index " +
                    std::to_string(i));
      return;
    }
  }
}

void CheckMatrixFinite(const ConstraintMatrix& m, const char* name,
                       std::vector<std::string>& out) {
  bool bad = false;
  auto check = [&](double v) { bad = bad || !std::isfinite(v); };
  if (m.is_dense()) {
    for (double v : m.dense_data()) check(v);
  } else {
    for (double v : m.values()) check(v);
  }
  if (bad) out.push_back(std::string("non-finite entry in matrix ") + name);
}

ConstraintMatrix DenseBlock(const std::vector<std::vector<double>>& rows,
                            int n, Storage storage) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw DimensionError("row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      t.push_back({static_cast<int>(i), j, rows[i][j]});
    }
  }
  return ConstraintMatrix::FromTriplets(static_cast<int>(rows.size()), n, t,
                                        storage);
}

}  // namespace

LpProblem make_dense_problem(std::vector<double> c,
                             const std::vector<std::vector<double>>& a_rows,
                             std::vector<double> b,
                             const std::vector<std::vector<double>>& g_rows,
                             std::vector<double> h, std::vector<double> l,
                             std::vector<double> u, Storage storage) {
  LpProblem p;
  const int n = static_cast<int>(c.size());
  p.c = std::move(c);
  p.A = DenseBlock(a_rows, n, storage);
  p.b = std::move(b);
  p.G = DenseBlock(g_rows, n, storage);
  p.h = std::move(h);
  p.l = std::move(l);
  p.u = std::move(u);
  p.storage = storage;
  return p;
}

std::vector<std::string> validate_problem(const LpProblem& p) {
  std::vector<std::string> out;
  const std::size_t n = p.c.size();
  if (static_cast<std::size_t>(p.A.cols()) != n) {
    out.push_back("equality matrix has " + std::to_string(p.A.cols()) +
                  " columns, expected " + std::to_string(n));
  }
  if (static_cast<std::size_t>(p.G.cols()) != n) {
    out.push_back("inequality matrix has " + std::to_string(p.G.cols()) +
                  " columns, expected " + std::to_string(n));
  }
  if (p.b.size() != static_cast<std::size_t>(p.A.rows())) {
    out.push_back("rhs length mismatch: b has " + std::to_string(p.b.size()) +
                  " entries, A has " + std::to_string(p.A.rows()) + " rows");
  }
  if (p.h.size() != static_cast<std::size_t>(p.G.rows())) {
    out.push_back("inequality rhs length mismatch: h has " +
                  std::to_string(p.h.size()) + " entries, G has " +
                  std::to_string(p.G.rows()) + " rows");
  }
  if (p.l.size() != n) {
    out.push_back("lower bound length mismatch: " +
                  std::to_string(p.l.size()) + " vs " + std::to_string(n));
  }
  if (p.u.size() != n) {
    out.push_back("upper bound length mismatch: " +
                  std::to_string(p.u.size()) + " vs " + std::to_string(n));
  }
  CheckFinite(p.c, "c", out);
  CheckFinite(p.b, "b", out);
  CheckFinite(p.h, "h", out);
  CheckMatrixFinite(p.A, "A", out);
  CheckMatrixFinite(p.G, "G", out);
  if (!std::isfinite(p.objective_offset)) {
    out.push_back("non-finite objective offset");
  }
  const std::size_t nb = std::min(p.l.size(), p.u.size());
  for (std::size_t i = 0; i < nb; ++i) {
    const double lo = p.l[i];
    const double hi = p.u[i];
    if (std::isnan(lo) || std::isnan(hi)) {
      out.push_back("NaN bound at index " + std::to_string(i));
    } else if (lo == kInfinity || hi == -kInfinity) {
      out.push_back("bound at index " + std::to_string(i) +
                    " is infinite on the wrong side");
    } else if (lo > hi) {
      out.push_back("crossed bounds at index " + std::to_string(i));
    }
  }
  return out;
}

void ensure_valid(const LpProblem& p) {
  std::vector<std::string> violations = validate_problem(p);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

SaddleForm build_saddle_form(const LpProblem& p) {
  ensure_valid(p);
  SaddleForm s;
  s.K = ConstraintMatrix::StackRows(p.G, p.A, p.storage);
  s.q = p.h;
  s.q.insert(s.q.end(), p.b.begin(), p.b.end());
  s.c = p.c;
  s.l = p.l;
  s.u = p.u;
  s.num_inequalities = p.G.rows();
  s.objective_offset = p.objective_offset;
  return s;
}

}  // namespace lpfom
