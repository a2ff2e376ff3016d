#ifndef LPFOM_TOOLS_CLI_H_
#define LPFOM_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lpfom/diffopt.h"
#include "lpfom/solver.h"

namespace lpfom::cli {

// Exit codes of the solve subcommand.
inline constexpr int kExitOptimal = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitIterationLimit = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One vector per row; a leading row with any non-numeric field is a header.
// Ragged rows raise ParseError.
CostBatch parse_cost_csv(std::string_view text);

std::string result_json(const SolveResult& r);

int exit_code(SolveStatus s);

}  // namespace lpfom::cli

#endif  // LPFOM_TOOLS_CLI_H_
