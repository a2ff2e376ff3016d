#include "lpfom/kkt.h"

#include <algorithm>
#include <cmath>

#include "lpfom/errors.h"

namespace lpfom {
namespace {

void check_lengths(const SaddleForm& sf, std::size_t nx, std::size_t ny) {
  if (nx != sf.c.size() || ny != sf.q.size()) {
    throw DimensionError("primal/dual vectors do not match the problem");
  }
}

}  // namespace

double KktResiduals::norm() const {
  return std::sqrt(primal_residual * primal_residual +
                   dual_residual * dual_residual + abs_gap * abs_gap);
}

double KktResiduals::weighted_norm(double omega) const {
  const double p = omega * primal_residual;
  const double d = dual_residual / omega;
  return std::sqrt(p * p + d * d + abs_gap * abs_gap);
}

std::vector<double> reduced_costs(const SaddleForm& sf,
                                  const std::vector<double>& y) {
  std::vector<double> kty(sf.c.size());
  sf.K.MultiplyTranspose(y, kty);
  for (std::size_t j = 0; j < kty.size(); ++j) kty[j] = sf.c[j] - kty[j];
  return kty;
}

KktResiduals compute_kkt_residuals(const SaddleForm& sf,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y) {
  check_lengths(sf, x.size(), y.size());
  KktResiduals r;
  std::vector<double> kx(sf.q.size());
  sf.K.Multiply(x, kx);
  double pres = 0.0;
  for (std::size_t i = 0; i < kx.size(); ++i) {
    double v = sf.q[i] - kx[i];
    if (static_cast<int>(i) < sf.num_inequalities) v = std::max(v, 0.0);
    pres += v * v;
  }
  r.primal_residual = std::sqrt(pres);

  const std::vector<double> lambda = reduced_costs(sf, y);
  double dres = 0.0;
  double dobj = dot<double>(sf.q, y);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const double plus = std::max(lambda[j], 0.0);
    const double minus = std::max(-lambda[j], 0.0);
    if (std::isfinite(sf.l[j])) {
      dobj += sf.l[j] * plus;
    } else {
      dres += plus * plus;
    }
    if (std::isfinite(sf.u[j])) {
      dobj -= sf.u[j] * minus;
    } else {
      dres += minus * minus;
    }
  }
  r.dual_residual = std::sqrt(dres);
  r.primal_objective = dot<double>(sf.c, x) + sf.objective_offset;
  r.dual_objective = dobj + sf.objective_offset;
  r.abs_gap = std::abs(r.primal_objective - r.dual_objective);
  return r;
}

KktResiduals compute_kkt_residuals(const LpProblem& p,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y) {
  return compute_kkt_residuals(build_saddle_form(p), x, y);
}

bool check_termination(const KktResiduals& k, double c_norm, double q_norm,
                       const SolverOptions& o) {
  return k.abs_gap <= o.eps_abs + o.eps_rel * (std::abs(k.primal_objective) +
                                              std::abs(k.dual_objective)) &&
         k.primal_residual <= o.eps_abs + o.eps_rel * q_norm &&
         k.dual_residual <= o.eps_abs + o.eps_rel * c_norm;
}

bool should_restart(Algorithm, double current, double start, double last,
                    std::int64_t steps_since_restart, std::int64_t total_steps) {
  if (current <= kSufficientDecay * start) return true;
  if (current <= kNecessaryDecay * start && current > last) return true;
  return static_cast<double>(steps_since_restart) >=
         kArtificialRestartFraction * static_cast<double>(total_steps);
}

bool is_dual_ray(const SaddleForm& sf, const std::vector<double>& d_y,
                 double eps) {
  for (int i = 0; i < sf.num_inequalities; ++i) {
    if (d_y[i] < -eps) return false;
  }
  // The ray's reduced cost is -K'd_y (the objective plays no part).
  std::vector<double> kty(sf.c.size());
  sf.K.MultiplyTranspose(d_y, kty);
  double obj = dot<double>(sf.q, d_y);
  double violation = 0.0;
  for (std::size_t j = 0; j < kty.size(); ++j) {
    const double plus = std::max(-kty[j], 0.0);
    const double minus = std::max(kty[j], 0.0);
    if (std::isfinite(sf.l[j])) {
      obj += sf.l[j] * plus;
    } else {
      violation = std::max(violation, plus);
    }
    if (std::isfinite(sf.u[j])) {
      obj -= sf.u[j] * minus;
    } else {
      violation = std::max(violation, minus);
    }
  }
  return violation <= eps && obj > eps;
}

bool is_primal_ray(const SaddleForm& sf, const std::vector<double>& d_x,
                   double eps) {
  if (!(dot<double>(sf.c, d_x) < -eps)) return false;
  std::vector<double> kd(sf.q.size());
  sf.K.Multiply(d_x, kd);
  for (std::size_t i = 0; i < kd.size(); ++i) {
    if (static_cast<int>(i) < sf.num_inequalities) {
      if (kd[i] < -eps) return false;
    } else if (std::abs(kd[i]) > eps) {
      return false;
    }
  }
  for (std::size_t j = 0; j < d_x.size(); ++j) {
    if (std::isfinite(sf.l[j]) && d_x[j] < -eps) return false;
    if (std::isfinite(sf.u[j]) && d_x[j] > eps) return false;
  }
  return true;
}

std::optional<InfeasibilityCertificate> detect_infeasibility(
    const SaddleForm& sf, const std::vector<double>& x_current,
    const std::vector<double>& y_current, const std::vector<double>& x_anchor,
    const std::vector<double>& y_anchor, std::int64_t steps_since_restart,
    const SolverOptions& opts) {
  check_lengths(sf, x_current.size(), y_current.size());
  check_lengths(sf, x_anchor.size(), y_anchor.size());
  if (steps_since_restart < 1) return std::nullopt;
  // Dividing by the step count would not survive the normalization below.
  auto direction = [](const std::vector<double>& a,
                      const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double n = norm2<double>(d);
    if (!(n > 0.0) || !std::isfinite(n)) return std::vector<double>{};
    for (double& v : d) v /= n;
    return d;
  };
  std::vector<double> d_y = direction(y_current, y_anchor);
  if (!d_y.empty() && is_dual_ray(sf, d_y, opts.eps_primal_infeasible)) {
    return InfeasibilityCertificate{CertificateKind::kPrimalInfeasible,
                                    std::move(d_y)};
  }
  std::vector<double> d_x = direction(x_current, x_anchor);
  if (!d_x.empty() && is_primal_ray(sf, d_x, opts.eps_dual_infeasible)) {
    return InfeasibilityCertificate{CertificateKind::kDualInfeasible,
                                    std::move(d_x)};
  }
  return std::nullopt;
}

std::optional<InfeasibilityCertificate> detect_infeasibility(
    const LpProblem& p, const std::vector<double>& x_current,
    const std::vector<double>& y_current, const std::vector<double>& x_anchor,
    const std::vector<double>& y_anchor, std::int64_t steps_since_restart,
    const SolverOptions& opts) {
  return detect_infeasibility(build_saddle_form(p), x_current, y_current,
                              x_anchor, y_anchor, steps_since_restart, opts);
}

}  // namespace lpfom
