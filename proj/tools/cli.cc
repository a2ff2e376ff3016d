#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpfom/errors.h"
#include "lpfom/generators.h"
#include "lpfom/io.h"

namespace lpfom::cli {
namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  // from_chars rejects a leading '+'.
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<double> read_vector_file(const std::string& path) {
  std::vector<double> v;
  for (const auto& row : parse_cost_csv(read_text(path))) v.insert(v.end(), row.begin(), row.end());
  return v;
}

// Flags shared by solve and regret. Defaults come from SolverOptions.
struct SolverFlags {
  SolverOptions opts;
  std::string algorithm{to_string(SolverOptions{}.algorithm)};
  std::string precision{to_string(SolverOptions{}.precision)};

  void Add(CLI::App* app) {
    app->add_option("--algorithm", algorithm, "rapdhg or r2hpdhg")
        ->check(CLI::IsMember({"rapdhg", "r2hpdhg"}))
        ->capture_default_str();
    app->add_option("--eps-abs", opts.eps_abs, "Absolute termination tolerance")
        ->capture_default_str();
    app->add_option("--eps-rel", opts.eps_rel, "Relative termination tolerance")
        ->capture_default_str();
    app->add_option("--eps-primal-infeasible", opts.eps_primal_infeasible,
                    "Primal infeasibility tolerance")
        ->capture_default_str();
    app->add_option("--eps-dual-infeasible", opts.eps_dual_infeasible,
                    "Dual infeasibility tolerance")
        ->capture_default_str();
    app->add_option("--eps-feas-polish", opts.eps_feas_polish,
                    "Tolerance for feasibility polishing")
        ->capture_default_str();
    app->add_option("--iteration-limit", opts.iteration_limit,
                    "Maximum number of iterations")
        ->capture_default_str();
    app->add_option("--check-frequency", opts.check_frequency,
                    "Iterations between termination checks")
        ->capture_default_str();
    app->add_flag("--verbose", opts.verbose, "Print solver progress to stderr");
    app->add_option("--display-frequency", opts.display_frequency,
                    "Termination checks between progress lines")
        ->capture_default_str();
    app->add_flag("--feasibility-polishing", opts.feasibility_polishing,
                  "Polish the final iterate for feasibility");
    app->add_option("--precision", precision, "f64 or f32")
        ->check(CLI::IsMember({"f64", "f32"}))
        ->capture_default_str();
    app->add_option("--seed", opts.seed, "Seed of the norm estimate")->capture_default_str();
  }

  SolverOptions Resolve(std::ostream& err) {
    SolverOptions o = opts;
    o.algorithm = *parse_algorithm(algorithm);
    o.precision = *parse_precision(precision);
    o.log_stream = &err;
    validate_options(o);
    return o;
  }
};

std::optional<ProblemFormat> format_flag(const std::string& flag, const std::string& path) {
  if (flag == "mps") return ProblemFormat::kMps;
  if (flag == "json") return ProblemFormat::kJson;
  return format_from_path(path);
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

CostBatch parse_cost_csv(std::string_view text) {
  CostBatch rows;
  int line_no = 0;
  bool first = true;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    bool numeric = true;
    while (true) {
      const std::size_t comma = line.find(',');
      auto v = parse_number(line.substr(0, comma));
      if (!v) numeric = false;
      row.push_back(v.value_or(0.0));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ParseError(line_no, "non-numeric field");
    }
    first = false;
    if (!rows.empty() && row.size() != rows[0].size()) {
      throw ParseError(line_no, "row has " + std::to_string(row.size()) + " fields, expected " +
                                    std::to_string(rows[0].size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string result_json(const SolveResult& r) {
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(r.status));
  j["objective"] = r.objective;
  j["dual_objective"] = r.dual_objective;
  j["iterations"] = r.iterations;
  j["restarts"] = r.restarts;
  j["polish_iterations"] = r.polish_iterations;
  j["kkt"] = {{"primal_residual", r.kkt.primal_residual},
              {"dual_residual", r.kkt.dual_residual},
              {"abs_gap", r.kkt.abs_gap},
              {"rel_gap", r.rel_gap}};
  j["x"] = r.x;
  j["y"] = r.y;
  if (r.certificate) j["certificate"] = r.certificate->ray;
  return j.dump(2) + "\n";
}

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return kExitOptimal;
    case SolveStatus::kPrimalInfeasible:
    case SolveStatus::kDualInfeasible:
      return kExitInfeasible;
    case SolveStatus::kIterationLimit:
      return kExitIterationLimit;
  }
  return kExitError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LP solver built on restarted PDHG", "lpfom"};
  app.require_subcommand(1);

  // solve
  SolverFlags solve_flags;
  std::string input, output, format, warm_primal, warm_dual;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an LP read from MPS or JSON");
  solve_cmd->add_option("--input", input, "Problem file")->required();
  solve_cmd->add_option("--output", output, "Result file (default: stdout)");
  solve_cmd->add_option("--format", format, "mps or json (default: from extension)")
      ->check(CLI::IsMember({"mps", "json"}));
  solve_cmd->add_option("--warm-start-primal", warm_primal, "File with a starting x");
  solve_cmd->add_option("--warm-start-dual", warm_dual, "File with a starting y");
  solve_flags.Add(solve_cmd);

  // generate
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a generated LP");
  gen_cmd->require_subcommand(1);
  std::string gen_output, gen_format;
  int items = 0, dims = 0, grid_k = 0;
  std::uint64_t gen_seed = 0;
  double capacity = kDefaultKnapsackCapacity;
  std::string costs_path;
  CLI::App* knap_cmd = gen_cmd->add_subcommand("knapsack", "Multi-dimensional knapsack");
  knap_cmd->add_option("--items", items, "Number of items")->required();
  knap_cmd->add_option("--dims", dims, "Number of knapsack constraints")->required();
  knap_cmd->add_option("--seed", gen_seed, "Seed of weights and values")->capture_default_str();
  knap_cmd->add_option("--capacity", capacity, "Capacity of every constraint")
      ->capture_default_str();
  CLI::App* grid_cmd = gen_cmd->add_subcommand("grid", "Grid shortest path");
  grid_cmd->add_option("--k", grid_k, "Grid side")->required();
  grid_cmd->add_option("--costs", costs_path, "CSV with k*k vertex costs");
  grid_cmd->add_option("--seed", gen_seed, "Seed of random costs when --costs is absent")
      ->capture_default_str();
  for (CLI::App* c : {knap_cmd, grid_cmd}) {
    c->add_option("--output", gen_output, "Destination (default: stdout)");
    c->add_option("--format", gen_format, "mps or json (default: from extension, else json)")
        ->check(CLI::IsMember({"mps", "json"}));
  }

  // regret
  SolverFlags regret_flags;
  std::string problem_path, pred_path, true_path, regret_format;
  CLI::App* regret_cmd = app.add_subcommand("regret", "Normalized regret of predicted costs");
  regret_cmd->add_option("--problem", problem_path, "Feasible set (objective ignored)")
      ->required();
  regret_cmd->add_option("--pred", pred_path, "CSV of predicted costs")->required();
  regret_cmd->add_option("--true", true_path, "CSV of true costs")->required();
  regret_cmd->add_option("--format", regret_format, "Problem format")
      ->check(CLI::IsMember({"mps", "json"}));
  regret_flags.Add(regret_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitError;
  }

  try {
    if (*solve_cmd) {
      SolverOptions opts = solve_flags.Resolve(err);
      LpProblem p = read_problem_file(input, format_flag(format, input));
      WarmStart warm;
      if (!warm_primal.empty()) warm.x = read_vector_file(warm_primal);
      if (!warm_dual.empty()) warm.y = read_vector_file(warm_dual);
      opts.warm_start = warm.x || warm.y;
      SolveResult r = solve(p, opts, warm);
      write_text(output, result_json(r), out);
      return exit_code(r.status);
    }
    if (*knap_cmd) {
      if (items < 1 || dims < 1) throw ParameterError("--items and --dims must be positive");
      std::mt19937_64 rng(gen_seed ^ 0x9e3779b97f4a7c15ULL);
      std::uniform_int_distribution<int> value(1, 10);
      std::vector<double> values(items);
      for (double& v : values) v = value(rng);
      LpProblem p = gen_knapsack(items, dims, gen_seed, values, capacity);
      const auto fmt = format_flag(gen_format, gen_output).value_or(ProblemFormat::kJson);
      write_text(gen_output, fmt == ProblemFormat::kMps ? write_mps(p) : write_problem_json(p),
                 out);
      return 0;
    }
    if (*grid_cmd) {
      if (grid_k < 2) throw ParameterError("--k must be at least 2");
      std::vector<double> costs;
      if (!costs_path.empty()) {
        costs = read_vector_file(costs_path);
      } else {
        std::mt19937_64 rng(gen_seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        costs.resize(static_cast<std::size_t>(grid_k) * grid_k);
        for (double& c : costs) c = u(rng);
      }
      LpProblem p = gen_grid_shortest_path(grid_k, costs);
      const auto fmt = format_flag(gen_format, gen_output).value_or(ProblemFormat::kJson);
      write_text(gen_output, fmt == ProblemFormat::kMps ? write_mps(p) : write_problem_json(p),
                 out);
      return 0;
    }
    if (*regret_cmd) {
      SolverOptions opts = regret_flags.Resolve(err);
      LpProblem p = read_problem_file(problem_path, format_flag(regret_format, problem_path));
      CostBatch pred = parse_cost_csv(read_text(pred_path));
      CostBatch tru = parse_cost_csv(read_text(true_path));
      if (pred.size() != tru.size()) {
        throw DimensionError("pred has " + std::to_string(pred.size()) + " rows, true has " +
                             std::to_string(tru.size()));
      }
      Regret r = normalized_regret(pred, tru, p, opts);
      out << "instance,regret\n";
      for (std::size_t i = 0; i < r.per_instance.size(); ++i) {
        out << i << ',' << csv_number(r.per_instance[i]) << '\n';
      }
      out << "normalized," << csv_number(r.value) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace lpfom::cli
