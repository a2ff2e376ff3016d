#ifndef LPFOM_PDHG_H_
#define LPFOM_PDHG_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lpfom/errors.h"
#include "lpfom/linalg.h"
#include "lpfom/problem.h"

namespace lpfom {

// Primal-dual pair z = (x, y).
template <typename T>
struct Iterate {
  std::vector<T> x;
  std::vector<T> y;

  template <typename U>
  Iterate<U> Cast() const {
    return {std::vector<U>(x.begin(), x.end()),
            std::vector<U>(y.begin(), y.end())};
  }
  bool operator==(const Iterate&) const = default;
};

// x_i <- median(l_i, x_i, u_i).
template <typename T>
void project_box_in_place(std::span<T> x, std::span<const T> l,
                          std::span<const T> u) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::min(std::max(x[i], l[i]), u[i]);
  }
}

// Clamps y[0:m1] at zero from below; equality duals are free.
template <typename T>
void project_dual_cone_in_place(std::span<T> y, int m1) {
  for (int i = 0; i < m1; ++i) y[i] = std::max(y[i], T(0));
}

std::vector<double> project_box(std::vector<double> x,
                                const std::vector<double>& l,
                                const std::vector<double>& u);
std::vector<double> project_dual_cone(std::vector<double> y, int m1);

// One PDHG step:
//   x+ = proj_X(x - tau (c - K'y))
//   y+ = proj_Y(y + sigma (q - K (2 x+ - x)))
// Uses exactly one product with K' and one with K.
template <typename T>
Iterate<T> pdhg_step(const Iterate<T>& z, const BasicSaddleForm<T>& sf,
                     T tau, T sigma) {
  const std::size_t n = z.x.size();
  const std::size_t m = z.y.size();
  if (n != static_cast<std::size_t>(sf.num_variables()) ||
      m != static_cast<std::size_t>(sf.num_constraints())) {
    throw DimensionError("iterate does not match the saddle form");
  }
  Iterate<T> next{std::vector<T>(n), std::vector<T>(m)};
  std::vector<T> kty(n);
  sf.K.MultiplyTranspose(z.y, kty);
  for (std::size_t j = 0; j < n; ++j) {
    next.x[j] = z.x[j] - tau * (sf.c[j] - kty[j]);
  }
  project_box_in_place<T>(next.x, sf.l, sf.u);
  std::vector<T> extrapolated(n);
  for (std::size_t j = 0; j < n; ++j) extrapolated[j] = 2 * next.x[j] - z.x[j];
  std::vector<T> kx(m);
  sf.K.Multiply(extrapolated, kx);
  for (std::size_t i = 0; i < m; ++i) {
    next.y[i] = z.y[i] + sigma * (sf.q[i] - kx[i]);
  }
  project_dual_cone_in_place<T>(next.y, sf.num_inequalities);
  return next;
}

// z_{k+1} = (k+1)/(k+2) (2 w - z_k) + 1/(k+2) z0, with w = PDHG(z_k).
template <typename T>
Iterate<T> halpern_reflect_update(const Iterate<T>& zk,
                                  const Iterate<T>& pdhg_of_zk,
                                  const Iterate<T>& z0, std::int64_t k) {
  if (k < 0) throw ParameterError("Halpern counter must be nonnegative");
  if (zk.x.size() != pdhg_of_zk.x.size() || zk.x.size() != z0.x.size() ||
      zk.y.size() != pdhg_of_zk.y.size() || zk.y.size() != z0.y.size()) {
    throw DimensionError("Halpern update operands differ in size");
  }
  const T a = static_cast<T>(static_cast<double>(k + 1) / static_cast<double>(k + 2));
  const T b = static_cast<T>(1.0 / static_cast<double>(k + 2));
  Iterate<T> out{std::vector<T>(zk.x.size()), std::vector<T>(zk.y.size())};
  for (std::size_t j = 0; j < out.x.size(); ++j) {
    out.x[j] = a * (2 * pdhg_of_zk.x[j] - zk.x[j]) + b * z0.x[j];
  }
  for (std::size_t i = 0; i < out.y.size(); ++i) {
    out.y[i] = a * (2 * pdhg_of_zk.y[i] - zk.y[i]) + b * z0.y[i];
  }
  return out;
}

// Weighted running mean of iterates. Sums are kept in double precision.
template <typename T>
class RunningAverage {
 public:
  RunningAverage() = default;
  RunningAverage(std::size_t n, std::size_t m) : sum_x_(n, 0.0), sum_y_(m, 0.0) {}

  void Add(const Iterate<T>& z, double weight) {
    if (!(weight > 0.0)) throw ParameterError("average weight must be positive");
    if (z.x.size() != sum_x_.size() || z.y.size() != sum_y_.size()) {
      throw DimensionError("iterate does not match the running average");
    }
    for (std::size_t j = 0; j < sum_x_.size(); ++j) sum_x_[j] += weight * z.x[j];
    for (std::size_t i = 0; i < sum_y_.size(); ++i) sum_y_[i] += weight * z.y[i];
    weight_ += weight;
    ++count_;
  }

  Iterate<T> Mean() const {
    Iterate<T> out{std::vector<T>(sum_x_.size()), std::vector<T>(sum_y_.size())};
    if (weight_ == 0.0) return out;
    for (std::size_t j = 0; j < sum_x_.size(); ++j) {
      out.x[j] = static_cast<T>(sum_x_[j] / weight_);
    }
    for (std::size_t i = 0; i < sum_y_.size(); ++i) {
      out.y[i] = static_cast<T>(sum_y_[i] / weight_);
    }
    return out;
  }

  void Reset() {
    std::fill(sum_x_.begin(), sum_x_.end(), 0.0);
    std::fill(sum_y_.begin(), sum_y_.end(), 0.0);
    weight_ = 0.0;
    count_ = 0;
  }

  double weight() const { return weight_; }
  std::int64_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

 private:
  std::vector<double> sum_x_;
  std::vector<double> sum_y_;
  double weight_ = 0.0;
  std::int64_t count_ = 0;
};

// Step-size scale eta and primal weight omega; tau = eta / omega and
// sigma = eta * omega, so tau * sigma = eta^2 and tau / sigma = 1 / omega^2.
struct StepState {
  double eta = 1.0;
  double omega = 1.0;
  // Step attempts so far, rejected ones included.
  std::int64_t attempts = 0;

  double tau() const { return eta / omega; }
  double sigma() const { return eta * omega; }
};

struct StepSizeDecision {
  bool accept = false;
  // Largest eta the step's own deltas certify.
  double limit = 0.0;
  double new_eta = 0.0;
};

inline constexpr double kStepReductionExponent = 0.3;
inline constexpr double kStepGrowthExponent = 0.6;

// Adaptive step rule. With movement = omega |dx|^2 + |dy|^2 / omega and
// interaction = |dy' K dx|, the limit is movement / (2 interaction) (infinite
// when interaction is 0). The step is accepted iff eta <= limit, and the next
// eta is min((1 - (k+1)^-0.3) limit, (1 + (k+1)^-0.6) eta). `attempt` is the
// 1-based index of this attempt; values below 1 are treated as 1.
StepSizeDecision adaptive_step_update(double eta, double omega,
                                      std::int64_t attempt, double delta_x_sq,
                                      double delta_y_sq, double interaction);

// Same rule with the deltas taken from z and the candidate PDHG(z).
template <typename T>
StepSizeDecision adaptive_step_update(const StepState& state,
                                      const Iterate<T>& z,
                                      const Iterate<T>& candidate,
                                      double interaction) {
  double dx = 0.0;
  double dy = 0.0;
  for (std::size_t j = 0; j < z.x.size(); ++j) {
    const double d = static_cast<double>(candidate.x[j]) - z.x[j];
    dx += d * d;
  }
  for (std::size_t i = 0; i < z.y.size(); ++i) {
    const double d = static_cast<double>(candidate.y[i]) - z.y[i];
    dy += d * d;
  }
  return adaptive_step_update(state.eta, state.omega, state.attempts + 1, dx,
                              dy, interaction);
}

// log omega+ = theta log(dy / dx) + (1 - theta) log omega; omega is kept when
// either movement is zero.
double update_primal_weight(double omega, double delta_x_norm,
                            double delta_y_norm, double theta);

// sqrt(omega |dx|^2 + |dy|^2 / omega).
inline double weighted_norm(double delta_x_sq, double delta_y_sq, double omega) {
  return std::sqrt(omega * delta_x_sq + delta_y_sq / omega);
}

}  // namespace lpfom

#endif  // LPFOM_PDHG_H_
