#ifndef LPFOM_OPTIONS_H_
#define LPFOM_OPTIONS_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace lpfom {

enum class Algorithm { kRaPdhg, kR2Hpdhg };
enum class Precision { kF64, kF32 };

struct SolverOptions {
  double eps_abs = 1e-4;
  double eps_rel = 1e-4;
  double eps_primal_infeasible = 1e-8;
  double eps_dual_infeasible = 1e-8;
  double eps_feas_polish = 1e-6;
  // Counts accepted steps.
  std::int64_t iteration_limit = std::numeric_limits<int>::max();
  // Accepted steps between termination / restart / infeasibility checks.
  int check_frequency = 64;
  bool verbose = false;
  // Checks between log lines.
  int display_frequency = 10;
  bool warm_start = false;
  bool feasibility_polishing = false;
  Algorithm algorithm = Algorithm::kR2Hpdhg;
  Precision precision = Precision::kF64;

  int ruiz_iterations = 10;
  double pock_chambolle_alpha = 1.0;
  // Primal weight smoothing.
  double theta = 0.5;
  // Start vector of the power iteration estimating |K|.
  std::uint64_t seed = 0;
  // Destination of verbose output; nullptr means std::cerr.
  std::ostream* log_stream = nullptr;
};

// Throws ParameterError naming the first bad field.
void validate_options(const SolverOptions& opts);

std::string_view to_string(Algorithm a);
std::string_view to_string(Precision p);
std::optional<Algorithm> parse_algorithm(std::string_view s);
std::optional<Precision> parse_precision(std::string_view s);

}  // namespace lpfom

#endif  // LPFOM_OPTIONS_H_
