#include <gtest/gtest.h>

#include <cmath>

#include "lpfom/errors.h"
#include "lpfom/kkt.h"
#include "oracles.h"

using namespace lpfom;

namespace {

LpProblem two_var() {
  return make_dense_problem({2, 1}, {}, {}, {{1, 1}}, {1}, {0, 0}, {1, 1});
}

}  // namespace

TEST(Kkt, HandCheckedOptimum) {
  auto k = compute_kkt_residuals(two_var(), {0, 1}, {1});
  EXPECT_EQ(k.primal_residual, 0.0);
  EXPECT_EQ(k.dual_residual, 0.0);
  EXPECT_EQ(k.primal_objective, 1.0);
  EXPECT_EQ(k.dual_objective, 1.0);
  EXPECT_EQ(k.abs_gap, 0.0);
  EXPECT_EQ(reduced_costs(build_saddle_form(two_var()), {1}), (std::vector<double>{1, 0}));
}

TEST(Kkt, InfeasiblePoint) {
  EXPECT_EQ(compute_kkt_residuals(two_var(), {0, 0}, {0}).primal_residual, 1.0);
}

TEST(Kkt, ZeroCostZeroDual) {
  auto p = make_dense_problem({0, 0}, {{1, 1}}, {3}, {{1, -1}}, {-2}, {0, -1},
                              {kInfinity, 5});
  auto k = compute_kkt_residuals(p, {1, 1}, {0, 0});
  EXPECT_EQ(k.dual_residual, 0.0);
  EXPECT_EQ(k.dual_objective, 0.0);
}

TEST(Kkt, UnabsorbableReducedCosts) {
  // x free: any reduced cost is a violation; x2 >= 0: only negative ones are.
  auto p = make_dense_problem({1, -2}, {}, {}, {}, {}, {-kInfinity, 0},
                              {kInfinity, kInfinity});
  auto k = compute_kkt_residuals(p, {0, 0}, {});
  EXPECT_DOUBLE_EQ(k.dual_residual, std::sqrt(1.0 + 4.0));
}

TEST(Kkt, MatchesIndependentOracle) {
  auto p = make_dense_problem({1, -1, 2}, {{1, 2, 0}}, {1}, {{0, 1, 1}, {1, 0, -1}},
                              {0.5, -1}, {-kInfinity, 0, -2}, {3, kInfinity, 2});
  p.objective_offset = 1.5;
  for (int t = 0; t < 5; ++t) {
    std::vector<double> x{0.1 * t - 0.3, 0.2 * t, 1.0 - 0.4 * t};
    std::vector<double> y{0.3 * t, 0.1, -0.2 * t};
    auto a = compute_kkt_residuals(p, x, y);
    auto b = oracle::kkt(p, x, y);
    EXPECT_NEAR(a.primal_residual, b.pres, 1e-12);
    EXPECT_NEAR(a.dual_residual, b.dres, 1e-12);
    EXPECT_NEAR(a.primal_objective, b.pobj, 1e-12);
    EXPECT_NEAR(a.dual_objective, b.dobj, 1e-12);
    EXPECT_NEAR(a.abs_gap, b.gap, 1e-12);
  }
}

TEST(Kkt, LengthMismatch) {
  EXPECT_THROW(compute_kkt_residuals(two_var(), {0}, {1}), DimensionError);
}

TEST(Termination, ExactOptimum) {
  KktResiduals k{0, 0, 1, 1, 0};
  SolverOptions o;
  o.eps_abs = o.eps_rel = 1e-300;
  EXPECT_TRUE(check_termination(k, 1, 1, o));
}

TEST(Termination, LargeGapFails) {
  KktResiduals k{0, 0, 1, 2, 1};
  EXPECT_FALSE(check_termination(k, 1, 1, SolverOptions{}));
}

TEST(Termination, BoundaryIsInclusive) {
  SolverOptions o;
  o.eps_abs = 0.5;
  o.eps_rel = 0.25;
  // gap <= 0.5 + 0.25 (1 + 2) = 1.25, pres <= 0.5 + 0.25 * 2, dres <= 0.5 + 0.25 * 4
  KktResiduals k{1.0, 1.5, 1.0, 2.0, 1.25};
  EXPECT_TRUE(check_termination(k, 4.0, 2.0, o));
  k.abs_gap = std::nextafter(1.25, 2.0);
  EXPECT_FALSE(check_termination(k, 4.0, 2.0, o));
  k.abs_gap = 1.25;
  k.primal_residual = std::nextafter(1.0, 2.0);
  EXPECT_FALSE(check_termination(k, 4.0, 2.0, o));
  k.primal_residual = 1.0;
  k.dual_residual = std::nextafter(1.5, 2.0);
  EXPECT_FALSE(check_termination(k, 4.0, 2.0, o));
}

TEST(Restart, SufficientDecay) {
  EXPECT_TRUE(should_restart(Algorithm::kRaPdhg, 0.1, 1.0, 0.5, 10, 1000));
  EXPECT_TRUE(should_restart(Algorithm::kR2Hpdhg, 0.2, 1.0, 0.1, 10, 1000));
}

TEST(Restart, NecessaryDecayWithStall) {
  EXPECT_TRUE(should_restart(Algorithm::kRaPdhg, 0.7, 1.0, 0.6, 10, 1000));
  EXPECT_FALSE(should_restart(Algorithm::kRaPdhg, 0.7, 1.0, 0.75, 10, 1000));
  EXPECT_FALSE(should_restart(Algorithm::kRaPdhg, 0.85, 1.0, 0.6, 10, 1000));
}

TEST(Restart, FallingWithoutEnoughDecay) {
  EXPECT_FALSE(should_restart(Algorithm::kR2Hpdhg, 0.9, 1.0, 0.95, 10, 1000));
}

TEST(Restart, Artificial) {
  EXPECT_TRUE(should_restart(Algorithm::kRaPdhg, 0.9, 1.0, 0.95, 360, 1000));
  EXPECT_FALSE(should_restart(Algorithm::kRaPdhg, 0.9, 1.0, 0.95, 359, 1000));
}

TEST(Infeasibility, FarkasDualRay) {
  auto p = make_dense_problem({0}, {}, {}, {{1}, {-1}}, {1, 0}, {0}, {kInfinity});
  auto sf = build_saddle_form(p);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(is_dual_ray(sf, {r, r}, 1e-8));
  SolverOptions o;
  auto cert = detect_infeasibility(p, {0.5}, {10, 10}, {0.5}, {0, 0}, 20, o);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->kind, CertificateKind::kPrimalInfeasible);
  EXPECT_NEAR(cert->ray[0], r, 1e-15);
  EXPECT_NEAR(cert->ray[1], r, 1e-15);
  // Same rows with x free: K'd = 0 still holds.
  auto free = make_dense_problem({0}, {}, {}, {{1}, {-1}}, {1, 0}, {-kInfinity},
                                 {kInfinity});
  EXPECT_TRUE(is_dual_ray(build_saddle_form(free), {r, r}, 1e-8));
  EXPECT_FALSE(is_dual_ray(build_saddle_form(free), {1, 0}, 1e-8));
}

TEST(Infeasibility, UnboundedPrimalRay) {
  auto p = make_dense_problem({-1}, {}, {}, {}, {}, {0}, {kInfinity});
  EXPECT_TRUE(is_primal_ray(build_saddle_form(p), {1}, 1e-8));
  auto cert = detect_infeasibility(p, {7}, {}, {2}, {}, 5, SolverOptions{});
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->kind, CertificateKind::kDualInfeasible);
  EXPECT_EQ(cert->ray, (std::vector<double>{1}));
}

TEST(Infeasibility, RayMustRespectBounds) {
  auto p = make_dense_problem({-1}, {}, {}, {}, {}, {0}, {10});
  EXPECT_FALSE(is_primal_ray(build_saddle_form(p), {1}, 1e-8));
  auto q = make_dense_problem({1}, {}, {}, {}, {}, {0}, {kInfinity});
  EXPECT_FALSE(is_primal_ray(build_saddle_form(q), {-1}, 1e-8));
}

TEST(Infeasibility, FeasibleDirectionGivesNothing) {
  auto p = make_dense_problem({2, 1}, {}, {}, {{1, 1}}, {1}, {0, 0}, {1, 1});
  EXPECT_FALSE(detect_infeasibility(p, {0, 1}, {1}, {0.5, 0.5}, {0.5}, 10, SolverOptions{}));
  EXPECT_FALSE(detect_infeasibility(p, {0, 1}, {1}, {0, 1}, {1}, 10, SolverOptions{}));
  EXPECT_FALSE(detect_infeasibility(p, {0, 1}, {1}, {0.5, 0}, {0}, 0, SolverOptions{}));
}

TEST(Options, Validation) {
  SolverOptions o;
  EXPECT_NO_THROW(validate_options(o));
  o.eps_abs = 0;
  EXPECT_THROW(validate_options(o), ParameterError);
  o = {};
  o.iteration_limit = 0;
  EXPECT_THROW(validate_options(o), ParameterError);
  o = {};
  o.check_frequency = 0;
  EXPECT_THROW(validate_options(o), ParameterError);
  o = {};
  o.eps_feas_polish = -1;
  EXPECT_THROW(validate_options(o), ParameterError);
}

TEST(Options, Defaults) {
  SolverOptions o;
  EXPECT_EQ(o.eps_abs, 1e-4);
  EXPECT_EQ(o.eps_rel, 1e-4);
  EXPECT_EQ(o.eps_primal_infeasible, 1e-8);
  EXPECT_EQ(o.eps_dual_infeasible, 1e-8);
  EXPECT_EQ(o.eps_feas_polish, 1e-6);
  EXPECT_EQ(o.check_frequency, 64);
  EXPECT_EQ(o.display_frequency, 10);
  EXPECT_FALSE(o.verbose);
  EXPECT_FALSE(o.warm_start);
  EXPECT_FALSE(o.feasibility_polishing);
  EXPECT_EQ(o.precision, Precision::kF64);
  EXPECT_EQ(o.iteration_limit, std::numeric_limits<int>::max());
}
