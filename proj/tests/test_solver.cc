#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>
#include <sstream>

#include "lpfom/errors.h"
#include "lpfom/generators.h"
#include "lpfom/solver.h"
#include "oracles.h"

using namespace lpfom;

namespace lpfom {
void PrintTo(Algorithm a, std::ostream* os) { *os << to_string(a); }
}  // namespace lpfom

namespace {

LpProblem two_var() {
  return make_dense_problem({2, 1}, {}, {}, {{1, 1}}, {1}, {0, 0}, {1, 1});
}

// x >= 1 and x <= 0.
LpProblem primal_infeasible(double lower = 0.0) {
  return make_dense_problem({0}, {}, {}, {{1}, {-1}}, {1, 0}, {lower}, {kInfinity});
}

LpProblem unbounded() {
  return make_dense_problem({-1}, {}, {}, {}, {}, {0}, {kInfinity});
}

SolverOptions tight(Algorithm alg) {
  SolverOptions o;
  o.algorithm = alg;
  o.eps_abs = o.eps_rel = 1e-8;
  return o;
}

void expect_identical(const SolveResult& a, const SolveResult& b) {
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.reduced_costs, b.reduced_costs);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.dual_objective, b.dual_objective);
  EXPECT_EQ(a.kkt.primal_residual, b.kkt.primal_residual);
  EXPECT_EQ(a.kkt.dual_residual, b.kkt.dual_residual);
  EXPECT_EQ(a.kkt.abs_gap, b.kkt.abs_gap);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.restarts, b.restarts);
  EXPECT_EQ(a.polish_iterations, b.polish_iterations);
}

void expect_in_domain(const LpProblem& p, const SolveResult& r) {
  ASSERT_EQ(r.x.size(), p.c.size());
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    EXPECT_GE(r.x[j], p.l[j]);
    EXPECT_LE(r.x[j], p.u[j]);
  }
  for (int i = 0; i < p.num_inequalities(); ++i) EXPECT_GE(r.y[i], 0.0);
}

class BothAlgorithms : public ::testing::TestWithParam<Algorithm> {};

}  // namespace

TEST_P(BothAlgorithms, TwoVariableLp) {
  auto p = two_var();
  auto want = oracle::vertex_enumeration(p);
  ASSERT_TRUE(want);
  auto r = solve(p, tight(GetParam()));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, want->objective, 1e-6);
  EXPECT_NEAR(r.x[0], 0.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
  expect_in_domain(p, r);
  EXPECT_TRUE(oracle::passes_termination(p, oracle::kkt(p, r.x, r.y), 1e-8, 1e-8));
}

TEST_P(BothAlgorithms, MixedConstraintLp) {
  // Equalities, inequalities, free and boxed variables together.
  auto p = make_dense_problem({1, 2, -1}, {{1, 1, 1}}, {2}, {{1, -1, 0}, {0, 1, 2}},
                              {-1, 1}, {-kInfinity, 0, 0}, {kInfinity, 3, 1});
  auto want = oracle::vertex_enumeration(p);
  ASSERT_TRUE(want);
  auto r = solve(p, tight(GetParam()));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, want->objective, 1e-6 * std::max(1.0, std::abs(want->objective)));
  expect_in_domain(p, r);
}

TEST_P(BothAlgorithms, WarmStartAtOptimumFinishesAtFirstCheck) {
  SolverOptions o = tight(GetParam());
  o.warm_start = true;
  auto r = solve(two_var(), o, WarmStart{std::vector<double>{0, 1}, std::vector<double>{1}});
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_LE(r.iterations, o.check_frequency);
}

TEST_P(BothAlgorithms, WarmStartIgnoredWithoutFlag) {
  SolverOptions o = tight(GetParam());
  auto cold = solve(two_var(), o);
  auto warm = solve(two_var(), o, WarmStart{std::vector<double>{0, 1}, std::vector<double>{1}});
  expect_identical(cold, warm);
}

TEST_P(BothAlgorithms, PartialAndInfeasibleWarmStarts) {
  SolverOptions o = tight(GetParam());
  o.warm_start = true;
  auto a = solve(two_var(), o, WarmStart{std::vector<double>{5, -3}, std::nullopt});
  EXPECT_EQ(a.status, SolveStatus::kOptimal);
  auto b = solve(two_var(), o, WarmStart{std::nullopt, std::vector<double>{-2}});
  EXPECT_EQ(b.status, SolveStatus::kOptimal);
  // A missing half behaves like zeros.
  auto c = solve(two_var(), o, WarmStart{std::nullopt, std::vector<double>{0}});
  auto d = solve(two_var(), o);
  expect_identical(c, d);
  EXPECT_THROW(solve(two_var(), o, WarmStart{std::vector<double>{0}, std::nullopt}),
               DimensionError);
}

TEST_P(BothAlgorithms, PrimalInfeasible) {
  SolverOptions o;
  o.algorithm = GetParam();
  o.iteration_limit = 10000;
  auto r = solve(primal_infeasible(), o);
  EXPECT_EQ(r.status, SolveStatus::kPrimalInfeasible);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->kind, CertificateKind::kPrimalInfeasible);
  expect_in_domain(primal_infeasible(), r);
}

TEST_P(BothAlgorithms, DualInfeasible) {
  SolverOptions o;
  o.algorithm = GetParam();
  o.iteration_limit = 10000;
  auto r = solve(unbounded(), o);
  EXPECT_EQ(r.status, SolveStatus::kDualInfeasible);
  ASSERT_TRUE(r.certificate);
  EXPECT_GT(r.certificate->ray[0], 0.0);
}

TEST_P(BothAlgorithms, IterationLimitReturnsCheckedPoint) {
  auto p = gen_knapsack(20, 3, 5, std::vector<double>(20, 1.0), 30.0);
  SolverOptions o = tight(GetParam());
  o.iteration_limit = 100;
  auto r = solve(p, o);
  EXPECT_EQ(r.status, SolveStatus::kIterationLimit);
  EXPECT_EQ(r.iterations, 100);
  expect_in_domain(p, r);
  auto k = oracle::kkt(p, r.x, r.y);
  EXPECT_EQ(k.pres, r.kkt.primal_residual);
  EXPECT_NEAR(k.dres, r.kkt.dual_residual, 1e-12);
  EXPECT_NEAR(k.gap, r.kkt.abs_gap, 1e-9);
}

TEST_P(BothAlgorithms, Deterministic) {
  auto p = gen_knapsack(20, 3, 11, std::vector<double>(20, 2.0), 30.0);
  SolverOptions o;
  o.algorithm = GetParam();
  expect_identical(solve(p, o), solve(p, o));
}

TEST_P(BothAlgorithms, SinglePrecision) {
  SolverOptions o;
  o.algorithm = GetParam();
  o.precision = Precision::kF32;
  auto r = solve(two_var(), o);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 1.0, 1e-3);
  expect_in_domain(two_var(), r);
}

TEST_P(BothAlgorithms, GridMatchesPathOracle) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> costs(9);
  for (double& v : costs) v = d(rng);
  auto p = gen_grid_shortest_path(3, costs);
  auto r = solve(p, tight(GetParam()));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const double want = oracle::grid_dijkstra(3, costs);
  EXPECT_NEAR(r.objective, want, 1e-6 * std::max(1.0, want));
}

TEST_P(BothAlgorithms, StorageDoesNotChangeTheAnswer) {
  auto p = gen_knapsack(10, 2, 3, std::vector<double>(10, 1.0), 20.0);
  auto s = p;
  s.storage = Storage::kSparseCsr;
  auto a = solve(p, tight(GetParam()));
  auto b = solve(s, tight(GetParam()));
  ASSERT_EQ(a.status, SolveStatus::kOptimal);
  ASSERT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_NEAR(a.objective, b.objective, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Solver, BothAlgorithms,
                         ::testing::Values(Algorithm::kRaPdhg, Algorithm::kR2Hpdhg),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Solver, FreeVariableInfeasibleWithAveraging) {
  SolverOptions o;
  o.algorithm = Algorithm::kRaPdhg;
  o.iteration_limit = 10000;
  EXPECT_EQ(solve(primal_infeasible(-kInfinity), o).status, SolveStatus::kPrimalInfeasible);
}

TEST(Solver, SameOptimumFromBothAlgorithms) {
  auto p = gen_knapsack(20, 3, 9, knapsack_weights(20, 1, 99)[0], 30.0);
  SolverOptions a;
  a.algorithm = Algorithm::kRaPdhg;
  SolverOptions b;
  b.algorithm = Algorithm::kR2Hpdhg;
  auto ra = solve(p, a), rb = solve(p, b);
  ASSERT_EQ(ra.status, SolveStatus::kOptimal);
  ASSERT_EQ(rb.status, SolveStatus::kOptimal);
  EXPECT_LE(std::abs(ra.objective - rb.objective),
            2 * (a.eps_abs + a.eps_rel * (std::abs(ra.objective) + std::abs(rb.objective))));
}

TEST(Solver, InvalidProblemThrows) {
  auto p = two_var();
  p.l[0] = 2;
  EXPECT_THROW(solve(p), ValidationError);
  SolverOptions o;
  o.check_frequency = 0;
  EXPECT_THROW(solve(two_var(), o), ParameterError);
}

TEST(Solver, RelativeGapAndReducedCosts) {
  auto r = solve(two_var(), tight(Algorithm::kR2Hpdhg));
  EXPECT_NEAR(r.rel_gap, r.kkt.abs_gap / (std::abs(r.objective) + std::abs(r.dual_objective)),
              1e-15);
  ASSERT_EQ(r.reduced_costs.size(), 2u);
  EXPECT_NEAR(r.reduced_costs[0], 2.0 - r.y[0], 1e-15);
  EXPECT_NEAR(r.reduced_costs[1], 1.0 - r.y[0], 1e-15);
}

TEST(Solver, ObjectiveOffsetIsReported) {
  auto p = two_var();
  p.objective_offset = 10;
  auto r = solve(p, tight(Algorithm::kRaPdhg));
  EXPECT_NEAR(r.objective, 11.0, 1e-6);
  EXPECT_NEAR(r.dual_objective, 11.0, 1e-6);
}

TEST(Solver, NoConstraints) {
  auto p = make_dense_problem({1, -1}, {}, {}, {}, {}, {-1, -2}, {3, 4});
  auto r = solve(p, tight(Algorithm::kR2Hpdhg));
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, -5.0, 1e-6);
}

TEST(Solver, VerboseLogFormat) {
  std::ostringstream log;
  SolverOptions o = tight(Algorithm::kRaPdhg);
  o.verbose = true;
  o.display_frequency = 1;
  o.log_stream = &log;
  auto r = solve(two_var(), o);
  std::istringstream in(log.str());
  std::string line;
  const std::regex fmt(
      "iter=[0-9]+ pobj=\\S+ dobj=\\S+ pres=\\S+ dres=\\S+ gap=\\S+ omega=\\S+ eta=\\S+ "
      "restarts=[0-9]+");
  int lines = 0;
  while (std::getline(in, line)) {
    EXPECT_TRUE(std::regex_match(line, fmt)) << line;
    if (lines == 0) EXPECT_EQ(line.rfind("iter=0 ", 0), 0u);
    ++lines;
  }
  EXPECT_EQ(lines, 1 + r.iterations / o.check_frequency);
  std::ostringstream quiet;
  o.verbose = false;
  o.log_stream = &quiet;
  solve(two_var(), o);
  EXPECT_TRUE(quiet.str().empty());
}

TEST(Solver, DisplayFrequencyThinsTheLog) {
  std::ostringstream log;
  SolverOptions o = tight(Algorithm::kRaPdhg);
  o.verbose = true;
  o.display_frequency = 1000;
  o.log_stream = &log;
  solve(two_var(), o);
  const std::string text = log.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
}

TEST(Polish, FeasibleInputUnchanged) {
  SolverOptions o;
  auto r = feasibility_polish(two_var(), {0, 1}, {1}, o);
  EXPECT_EQ(r.x, (std::vector<double>{0, 1}));
  EXPECT_EQ(r.y, (std::vector<double>{1}));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_TRUE(r.complete());
}

TEST(Polish, DrivesPrimalResidualDown) {
  for (auto alg : {Algorithm::kRaPdhg, Algorithm::kR2Hpdhg}) {
    SolverOptions o;
    o.algorithm = alg;
    auto p = two_var();
    std::vector<double> x{0, 0.999};
    EXPECT_NEAR(oracle::kkt(p, x, {1}).pres, 1e-3, 1e-12);
    auto r = feasibility_polish(p, x, {1}, o);
    EXPECT_TRUE(r.primal_complete);
    EXPECT_LE(oracle::kkt(p, r.x, r.y).pres, 1e-6);
    EXPECT_EQ(r.y, (std::vector<double>{1}));
  }
}

TEST(Polish, DualPass) {
  // y = 3 leaves reduced cost -2 on x2, which a finite upper bound absorbs;
  // drop that bound and the dual pass has work to do.
  auto p = make_dense_problem({2, 1}, {}, {}, {{1, 1}}, {1}, {0, 0}, {1, kInfinity});
  SolverOptions o;
  auto r = feasibility_polish(p, {0, 1}, {3}, o);
  EXPECT_TRUE(r.dual_complete);
  EXPECT_LE(oracle::kkt(p, r.x, r.y).dres, 1e-6);
  EXPECT_GT(r.iterations, 0);
}

TEST(Polish, ZeroCostMatchesMainSolve) {
  auto p = make_dense_problem({0, 0}, {}, {}, {{1, 1}}, {1}, {0, 0}, {1, 1});
  SolverOptions o;
  o.eps_abs = o.eps_rel = 1e-7;
  auto r = solve(p, o);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  auto pol = feasibility_polish(p, {0, 0}, {0}, o);
  EXPECT_TRUE(pol.complete());
  EXPECT_LE(oracle::kkt(p, pol.x, pol.y).pres, o.eps_feas_polish);
  EXPECT_EQ(oracle::kkt(p, pol.x, pol.y).pobj, 0.0);
}

TEST(Polish, InsideSolve) {
  auto p = gen_knapsack(20, 3, 2, std::vector<double>(20, 1.0), 30.0);
  SolverOptions o;
  o.eps_abs = o.eps_rel = 1e-3;
  o.feasibility_polishing = true;
  auto r = solve(p, o);
  EXPECT_LE(r.kkt.primal_residual, 1e-6);
  EXPECT_TRUE(r.polish_complete);
  SolverOptions plain = o;
  plain.feasibility_polishing = false;
  auto base = solve(p, plain);
  EXPECT_EQ(base.polish_iterations, 0);
  EXPECT_NEAR(r.objective_degradation, r.objective - base.objective, 1e-12);
}

TEST(Batch, OneMemberEqualsSolve) {
  std::vector<LpProblem> ps{two_var()};
  auto out = batch_solve(ps);
  ASSERT_EQ(out.size(), 1u);
  expect_identical(out[0], solve(two_var()));
}

TEST(Batch, IdenticalCopies) {
  auto p = gen_knapsack(20, 3, 1, std::vector<double>(20, 1.0), 30.0);
  std::vector<LpProblem> ps(8, p);
  auto out = batch_solve(ps, {}, {}, 4);
  for (const auto& r : out) expect_identical(r, out[0]);
}

TEST(Batch, HundredKnapsacksMatchSequential) {
  std::vector<LpProblem> ps;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(1.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(20);
    for (double& x : v) x = d(rng);
    ps.push_back(gen_knapsack(20, 3, 42, v, 30.0));
  }
  auto out = batch_solve(ps);
  for (int i = 0; i < 100; ++i) expect_identical(out[i], solve(ps[i]));
}

TEST(Batch, WorkerCountDoesNotMatter) {
  std::vector<LpProblem> ps;
  for (int i = 0; i < 12; ++i) {
    ps.push_back(gen_knapsack(10, 2, 100 + i, std::vector<double>(10, 1.0 + i), 20.0));
  }
  auto one = batch_solve(ps, {}, {}, 1);
  for (unsigned w : {2u, 5u, 16u}) {
    auto many = batch_solve(ps, {}, {}, w);
    for (std::size_t i = 0; i < ps.size(); ++i) expect_identical(many[i], one[i]);
  }
}

TEST(Batch, WarmStartsPerMember) {
  std::vector<LpProblem> ps{two_var(), two_var()};
  std::vector<WarmStart> warm{{std::vector<double>{0, 1}, std::vector<double>{1}}, {}};
  SolverOptions o = tight(Algorithm::kR2Hpdhg);
  o.warm_start = true;
  auto out = batch_solve(ps, o, warm);
  expect_identical(out[0], solve(two_var(), o, warm[0]));
  expect_identical(out[1], solve(two_var(), o));
  std::vector<WarmStart> short_warm(1);
  EXPECT_THROW(batch_solve(ps, o, short_warm), DimensionError);
}

TEST(Batch, ShapeMismatchNamesIndex) {
  std::vector<LpProblem> ps{two_var(), two_var(),
                            make_dense_problem({1}, {}, {}, {{1}}, {1}, {0}, {1})};
  try {
    batch_solve(ps);
    FAIL() << "expected BatchShapeError";
  } catch (const BatchShapeError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Batch, MemberErrorNamesIndex) {
  std::vector<LpProblem> ps{two_var(), two_var()};
  ps[1].l[0] = 5;
  try {
    batch_solve(ps);
    FAIL() << "expected BatchMemberError";
  } catch (const BatchMemberError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Batch, Empty) {
  EXPECT_TRUE(batch_solve(std::span<const LpProblem>{}).empty());
}
