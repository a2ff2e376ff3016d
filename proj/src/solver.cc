#include "lpfom/solver.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <type_traits>

#include "lpfom/errors.h"
#include "lpfom/pdhg.h"
#include "solver_internal.h"

namespace lpfom {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kPrimalInfeasible:
      return "PrimalInfeasible";
    case SolveStatus::kDualInfeasible:
      return "DualInfeasible";
    case SolveStatus::kIterationLimit:
      return "IterationLimit";
  }
  return "Unknown";
}

namespace internal {
namespace {

enum class Goal { kOptimality, kPrimalFeasibility, kDualFeasibility };

struct RunOutput {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> x;
  std::vector<double> y;
  KktResiduals kkt;
  std::int64_t iterations = 0;
  std::int64_t restarts = 0;
  bool goal_met = false;
  std::optional<InfeasibilityCertificate> certificate;
};

template <typename T>
double sq_dist(const std::vector<T>& a, const std::vector<T>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    s += d * d;
  }
  return s;
}

template <typename T>
bool all_finite(const std::vector<T>& v) {
  for (T e : v) {
    if (!std::isfinite(e)) return false;
  }
  return true;
}

// One solve of the scaled problem in precision T. `orig` is the unscaled data
// residuals are measured against.
template <typename T>
class Engine {
 public:
  Engine(const SaddleForm& orig, const SaddleForm& scaled,
         const ScalingInfo& scaling, double spectral_norm, Goal goal,
         const SolverOptions& opts)
      : orig_(orig),
        scaled_(scaled),
        scaling_(scaling),
        goal_(goal),
        opts_(opts),
        c_norm_(norm2<double>(orig.c)),
        q_norm_(norm2<double>(orig.q)) {
    if constexpr (std::is_same_v<T, double>) {
      sf_ = &scaled;
    } else {
      owned_ = scaled.Cast<T>();
      sf_ = &*owned_;
    }
    eta0_ = spectral_norm > 0.0 ? 0.99 / spectral_norm : 1.0;
    const double cn = norm2<double>(scaled.c);
    const double qn = norm2<double>(scaled.q);
    omega0_ = (cn > 0.0 && qn > 0.0) ? cn / qn : 1.0;
  }

  RunOutput Run(const Iterate<double>& start_scaled);

 private:
  struct Evaluated {
    std::vector<double> x;
    std::vector<double> y;
    KktResiduals kkt;
    double score = 0.0;
    bool finite = false;
  };

  Evaluated Evaluate(const Iterate<T>& z) const {
    Evaluated e;
    std::vector<double> xs(z.x.begin(), z.x.end());
    std::vector<double> ys(z.y.begin(), z.y.end());
    auto [x, y] = unscale_solution(xs, ys, scaling_);
    project_box_in_place<double>(x, orig_.l, orig_.u);
    project_dual_cone_in_place<double>(y, orig_.num_inequalities);
    e.finite = all_finite(x) && all_finite(y);
    if (e.finite) {
      e.kkt = compute_kkt_residuals(orig_, x, y);
      switch (goal_) {
        case Goal::kOptimality:
          e.score = e.kkt.norm();
          break;
        case Goal::kPrimalFeasibility:
          e.score = e.kkt.primal_residual;
          break;
        case Goal::kDualFeasibility:
          e.score = e.kkt.dual_residual;
          break;
      }
      e.finite = std::isfinite(e.score);
    }
    e.x = std::move(x);
    e.y = std::move(y);
    return e;
  }

  bool GoalMet(const KktResiduals& k) const {
    switch (goal_) {
      case Goal::kOptimality:
        return check_termination(k, c_norm_, q_norm_, opts_);
      case Goal::kPrimalFeasibility:
        return k.primal_residual <= opts_.eps_feas_polish;
      case Goal::kDualFeasibility:
        return k.dual_residual <= opts_.eps_feas_polish;
    }
    return false;
  }

  // KKT of a scaled-space point on the scaled data.
  KktResiduals ScaledKkt(const Iterate<T>& z) const {
    return compute_kkt_residuals(scaled_, std::vector<double>(z.x.begin(), z.x.end()),
                                 std::vector<double>(z.y.begin(), z.y.end()));
  }

  void Log(std::int64_t iter, const KktResiduals& k, const StepState& st,
           std::int64_t restarts) const {
    std::ostream& os = opts_.log_stream ? *opts_.log_stream : std::cerr;
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "iter=%" PRId64
                  " pobj=%.6e dobj=%.6e pres=%.6e dres=%.6e gap=%.6e"
                  " omega=%.6e eta=%.6e restarts=%" PRId64 "\n",
                  iter, k.primal_objective, k.dual_objective, k.primal_residual,
                  k.dual_residual, k.abs_gap, st.omega, st.eta, restarts);
    os << buf;
  }

  const SaddleForm& orig_;
  const SaddleForm& scaled_;
  const ScalingInfo& scaling_;
  Goal goal_;
  const SolverOptions& opts_;
  double c_norm_;
  double q_norm_;
  std::optional<BasicSaddleForm<T>> owned_;
  const BasicSaddleForm<T>* sf_ = nullptr;
  double eta0_ = 1.0;
  double omega0_ = 1.0;
};

template <typename T>
RunOutput Engine<T>::Run(const Iterate<double>& start_scaled) {
  const BasicSaddleForm<T>& sf = *sf_;
  const std::size_t n = sf.c.size();
  const std::size_t m = sf.q.size();
  const int m1 = sf.num_inequalities;
  const bool halpern = opts_.algorithm == Algorithm::kR2Hpdhg;

  Iterate<T> z = start_scaled.Cast<T>();
  project_box_in_place<T>(z.x, sf.l, sf.u);
  project_dual_cone_in_place<T>(z.y, m1);

  // Cached products of the current iterate and of the epoch anchor.
  std::vector<T> kx(m), kty(n);
  sf.K.Multiply(z.x, kx);
  sf.K.MultiplyTranspose(z.y, kty);
  Iterate<T> anchor = z;
  std::vector<T> kx0 = kx, kty0 = kty;
  // Last PDHG output; the r2HPDHG candidate.
  Iterate<T> w = z;

  RunningAverage<T> avg(n, m);
  StepState st{eta0_, omega0_, 0};
  std::int64_t iterations = 0;
  std::int64_t since_restart = 0;
  std::int64_t restarts = 0;
  std::int64_t halpern_k = 0;
  std::int64_t checks = 0;

  RunOutput out;
  Evaluated best;
  best.score = std::numeric_limits<double>::infinity();
  auto finish = [&](SolveStatus status, Evaluated&& e) {
    out.status = status;
    out.x = std::move(e.x);
    out.y = std::move(e.y);
    out.kkt = e.kkt;
    out.iterations = iterations;
    out.restarts = restarts;
    return out;
  };

  {
    Evaluated e = Evaluate(z);
    if (opts_.verbose) Log(0, e.kkt, st, 0);
    if (e.finite && GoalMet(e.kkt)) {
      out.goal_met = true;
      return finish(SolveStatus::kOptimal, std::move(e));
    }
    best = std::move(e);
  }

  double metric_start = 0.0;
  double metric_last = 0.0;
  if (!halpern) {
    metric_start = ScaledKkt(z).weighted_norm(st.omega);
    metric_last = metric_start;
  }
  double last_fpr = 0.0;

  std::vector<T> xn(n), yn(m), kxn(m), ktyn(n);
  bool diverged = false;

  while (iterations < opts_.iteration_limit) {
    double dx2 = 0.0, dy2 = 0.0, eta_used = 0.0;
    for (;;) {
      ++st.attempts;
      const T tau = static_cast<T>(st.tau());
      const T sigma = static_cast<T>(st.sigma());
      for (std::size_t j = 0; j < n; ++j) {
        xn[j] = std::min(std::max(z.x[j] - tau * (sf.c[j] - kty[j]), sf.l[j]),
                         sf.u[j]);
      }
      sf.K.Multiply(xn, kxn);
      for (std::size_t i = 0; i < m; ++i) {
        T v = z.y[i] + sigma * (sf.q[i] - (2 * kxn[i] - kx[i]));
        if (static_cast<int>(i) < m1 && v < T(0)) v = T(0);
        yn[i] = v;
      }
      dx2 = sq_dist(xn, z.x);
      dy2 = sq_dist(yn, z.y);
      double inter = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        inter += (static_cast<double>(yn[i]) - z.y[i]) *
                 (static_cast<double>(kxn[i]) - kx[i]);
      }
      inter = std::abs(inter);
      if (!std::isfinite(dx2) || !std::isfinite(dy2) || !std::isfinite(inter)) {
        diverged = true;
        break;
      }
      const StepSizeDecision d = adaptive_step_update(st.eta, st.omega, st.attempts,
                                                      dx2, dy2, inter);
      eta_used = st.eta;
      if (std::isfinite(d.new_eta) && d.new_eta > 0.0) st.eta = d.new_eta;
      if (d.accept) break;
    }
    if (diverged) break;
    sf.K.MultiplyTranspose(yn, ktyn);
    ++iterations;
    ++since_restart;
    last_fpr = weighted_norm(dx2, dy2, st.omega);

    if (halpern) {
      if (since_restart == 1) {
        metric_start = last_fpr;
        metric_last = last_fpr;
      }
      const T a = static_cast<T>(static_cast<double>(halpern_k + 1) /
                                 static_cast<double>(halpern_k + 2));
      const T b = static_cast<T>(1.0 / static_cast<double>(halpern_k + 2));
      for (std::size_t j = 0; j < n; ++j) {
        z.x[j] = a * (2 * xn[j] - z.x[j]) + b * anchor.x[j];
        kty[j] = a * (2 * ktyn[j] - kty[j]) + b * kty0[j];
      }
      for (std::size_t i = 0; i < m; ++i) {
        z.y[i] = a * (2 * yn[i] - z.y[i]) + b * anchor.y[i];
        kx[i] = a * (2 * kxn[i] - kx[i]) + b * kx0[i];
      }
      ++halpern_k;
      w.x = xn;
      w.y = yn;
    } else {
      z.x = xn;
      z.y = yn;
      kx = kxn;
      kty = ktyn;
      avg.Add(z, eta_used);
    }

    const bool at_limit = iterations >= opts_.iteration_limit;
    if (iterations % opts_.check_frequency != 0 && !at_limit) continue;
    ++checks;

    // Termination candidates.
    Iterate<T> mean;
    if (!halpern) mean = avg.Mean();
    const Iterate<T>& current = halpern ? w : z;
    Evaluated cand[2];
    int num_cand = 0;
    if (!halpern) cand[num_cand++] = Evaluate(mean);
    cand[num_cand++] = Evaluate(current);
    if (opts_.verbose &&
        (checks % opts_.display_frequency == 0 || at_limit)) {
      Log(iterations, cand[0].kkt, st, restarts);
    }
    for (int c = 0; c < num_cand; ++c) {
      if (cand[c].finite && GoalMet(cand[c].kkt)) {
        out.goal_met = true;
        return finish(SolveStatus::kOptimal, std::move(cand[c]));
      }
    }
    for (int c = 0; c < num_cand; ++c) {
      if (cand[c].finite && cand[c].score < best.score) best = cand[c];
    }
    if (!cand[num_cand - 1].finite) {
      diverged = true;
      break;
    }

    if (goal_ == Goal::kOptimality) {
      std::vector<double> ax(anchor.x.begin(), anchor.x.end());
      std::vector<double> ay(anchor.y.begin(), anchor.y.end());
      auto [ox, oy] = unscale_solution(ax, ay, scaling_);
      const Evaluated& cur = cand[num_cand - 1];
      auto cert = detect_infeasibility(orig_, cur.x, cur.y, ox, oy,
                                       since_restart, opts_);
      if (cert) {
        const SolveStatus s = cert->kind == CertificateKind::kPrimalInfeasible
                                  ? SolveStatus::kPrimalInfeasible
                                  : SolveStatus::kDualInfeasible;
        out.certificate = std::move(cert);
        return finish(s, Evaluate(current));
      }
    }
    if (at_limit) break;

    double metric = 0.0;
    KktResiduals mean_kkt;
    if (halpern) {
      metric = last_fpr;
    } else {
      mean_kkt = ScaledKkt(mean);
      metric = mean_kkt.weighted_norm(st.omega);
    }
    if (should_restart(opts_.algorithm, metric, metric_start, metric_last,
                       since_restart, iterations)) {
      Iterate<T> next = halpern ? w : mean;
      const double dxn = std::sqrt(sq_dist(next.x, anchor.x));
      const double dyn = std::sqrt(sq_dist(next.y, anchor.y));
      st.omega = update_primal_weight(st.omega, dxn, dyn, opts_.theta);
      z = std::move(next);
      sf.K.Multiply(z.x, kx);
      sf.K.MultiplyTranspose(z.y, kty);
      anchor = z;
      kx0 = kx;
      kty0 = kty;
      avg.Reset();
      halpern_k = 0;
      since_restart = 0;
      ++restarts;
      if (!halpern) {
        metric_start = mean_kkt.weighted_norm(st.omega);
        metric_last = metric_start;
      }
    } else {
      metric_last = metric;
    }
  }
  (void)diverged;
  return finish(SolveStatus::kIterationLimit, std::move(best));
}

Iterate<double> scaled_start(const SaddleForm& sf, const SaddleForm& scaled,
                             const ScalingInfo& s,
                             const std::optional<std::vector<double>>& x0,
                             const std::optional<std::vector<double>>& y0) {
  std::vector<double> x = x0 ? *x0 : std::vector<double>(sf.c.size(), 0.0);
  std::vector<double> y = y0 ? *y0 : std::vector<double>(sf.q.size(), 0.0);
  if (x.size() != sf.c.size()) {
    throw DimensionError("warm-start primal has wrong length");
  }
  if (y.size() != sf.q.size()) {
    throw DimensionError("warm-start dual has wrong length");
  }
  project_box_in_place<double>(x, sf.l, sf.u);
  project_dual_cone_in_place<double>(y, sf.num_inequalities);
  auto [xs, ys] = scale_solution(x, y, s);
  project_box_in_place<double>(xs, scaled.l, scaled.u);
  project_dual_cone_in_place<double>(ys, scaled.num_inequalities);
  return {std::move(xs), std::move(ys)};
}

RunOutput run(const SaddleForm& orig, const Preconditioner& pre, Goal goal,
              const SolverOptions& opts,
              const std::optional<std::vector<double>>& x0,
              const std::optional<std::vector<double>>& y0) {
  const SaddleForm scaled = apply_scaling(orig, pre.scaled);
  const Iterate<double> start =
      scaled_start(orig, scaled, pre.scaled.scaling, x0, y0);
  if (opts.precision == Precision::kF32) {
    Engine<float> e(orig, scaled, pre.scaled.scaling, pre.spectral_norm, goal,
                    opts);
    return e.Run(start);
  }
  Engine<double> e(orig, scaled, pre.scaled.scaling, pre.spectral_norm, goal,
                   opts);
  return e.Run(start);
}

PolishResult polish(const SaddleForm& sf, const Preconditioner& pre,
                    std::vector<double> x, std::vector<double> y,
                    const SolverOptions& opts) {
  if (x.size() != sf.c.size() || y.size() != sf.q.size()) {
    throw DimensionError("polish input does not match the problem");
  }
  project_box_in_place<double>(x, sf.l, sf.u);
  project_dual_cone_in_place<double>(y, sf.num_inequalities);
  PolishResult r;
  const KktResiduals k = compute_kkt_residuals(sf, x, y);

  if (k.primal_residual <= opts.eps_feas_polish) {
    r.primal_complete = true;
    r.x = x;
  } else {
    SaddleForm feas = sf;
    std::fill(feas.c.begin(), feas.c.end(), 0.0);
    feas.objective_offset = 0.0;
    RunOutput o = run(feas, pre, Goal::kPrimalFeasibility, opts, x, std::nullopt);
    r.x = std::move(o.x);
    r.primal_complete = o.goal_met;
    r.iterations += o.iterations;
  }

  if (k.dual_residual <= opts.eps_feas_polish) {
    r.dual_complete = true;
    r.y = y;
  } else {
    SaddleForm feas = sf;
    std::fill(feas.q.begin(), feas.q.end(), 0.0);
    for (std::size_t j = 0; j < feas.l.size(); ++j) {
      if (std::isfinite(feas.l[j])) feas.l[j] = 0.0;
      if (std::isfinite(feas.u[j])) feas.u[j] = 0.0;
    }
    RunOutput o = run(feas, pre, Goal::kDualFeasibility, opts, std::nullopt, y);
    r.y = std::move(o.y);
    r.dual_complete = o.goal_met;
    r.iterations += o.iterations;
  }
  return r;
}

}  // namespace

Preconditioner make_preconditioner(const ConstraintMatrix& k,
                                   const SolverOptions& opts) {
  Preconditioner p;
  p.scaled = precondition_matrix(k, opts.ruiz_iterations, opts.pock_chambolle_alpha);
  p.spectral_norm =
      estimate_spectral_norm(p.scaled.matrix, 1e-6, 5000, opts.seed).value;
  return p;
}

SolveResult solve_prepared(const SaddleForm& sf, const Preconditioner& pre,
                           const SolverOptions& opts, const WarmStart& warm) {
  std::optional<std::vector<double>> x0, y0;
  if (opts.warm_start) {
    x0 = warm.x;
    y0 = warm.y;
  }
  RunOutput o = run(sf, pre, Goal::kOptimality, opts, x0, y0);

  SolveResult r;
  r.status = o.status;
  r.iterations = o.iterations;
  r.restarts = o.restarts;
  r.certificate = std::move(o.certificate);
  r.x = std::move(o.x);
  r.y = std::move(o.y);
  r.kkt = o.kkt;

  if (opts.feasibility_polishing && (r.status == SolveStatus::kOptimal ||
                                     r.status == SolveStatus::kIterationLimit)) {
    const double before = r.kkt.primal_objective;
    PolishResult p = polish(sf, pre, r.x, r.y, opts);
    r.x = std::move(p.x);
    r.y = std::move(p.y);
    r.polish_iterations = p.iterations;
    r.polish_complete = p.complete();
    r.kkt = compute_kkt_residuals(sf, r.x, r.y);
    r.objective_degradation = r.kkt.primal_objective - before;
  }

  r.reduced_costs = reduced_costs(sf, r.y);
  r.objective = r.kkt.primal_objective;
  r.dual_objective = r.kkt.dual_objective;
  const double denom = std::abs(r.objective) + std::abs(r.dual_objective);
  r.rel_gap = denom > 0.0 ? r.kkt.abs_gap / denom : 0.0;
  return r;
}

}  // namespace internal

SolveResult solve(const LpProblem& p, const SolverOptions& opts,
                  const WarmStart& warm) {
  validate_options(opts);
  const SaddleForm sf = build_saddle_form(p);
  const internal::Preconditioner pre = internal::make_preconditioner(sf.K, opts);
  return internal::solve_prepared(sf, pre, opts, warm);
}

PolishResult feasibility_polish(const LpProblem& p, const std::vector<double>& x,
                                const std::vector<double>& y,
                                const SolverOptions& opts) {
  validate_options(opts);
  const SaddleForm sf = build_saddle_form(p);
  const internal::Preconditioner pre = internal::make_preconditioner(sf.K, opts);
  return internal::polish(sf, pre, x, y, opts);
}

}  // namespace lpfom
