#ifndef LPFOM_IO_H_
#define LPFOM_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "lpfom/problem.h"

namespace lpfom {

// Free-format MPS reader.
//
// Sections: NAME, OBJSENSE (MIN only), ROWS (N/E/G/L), COLUMNS, RHS, RANGES,
// BOUNDS, ENDATA. Section headers start in column 1; data lines are
// indented. L rows are negated into G rows, ranged rows become a pair of G
// rows, and a RHS entry on the objective row is read as minus the objective
// constant. Default bounds are [0, +inf); bound types LO, UP, FX, FR, MI, PL
// and BV are understood. Integer markers are skipped (the relaxation is
// read). Errors are reported as ParseError with the 1-based line number.
LpProblem parse_mps(std::string_view text);

// Writes a document that parse_mps reads back to the same problem.
std::string write_mps(const LpProblem& p);

// JSON problem document:
//   {"c": [...], "A": {"rows": m2, "cols": n, "data": [[i, j, v], ...]},
//    "b": [...], "G": {...}, "h": [...], "l": [...], "u": [...]}
// Infinite bounds are the strings "inf" / "-inf". Optional keys: "storage"
// ("sparse" | "dense"), "objective_offset", "name". Missing bounds default to
// [0, +inf).
LpProblem parse_problem_json(std::string_view text);
std::string write_problem_json(const LpProblem& p);

enum class ProblemFormat { kMps, kJson };

// Guesses the format from the file extension (".json" or ".mps").
std::optional<ProblemFormat> format_from_path(const std::string& path);
LpProblem read_problem_file(const std::string& path,
                            std::optional<ProblemFormat> format = {});
void write_problem_file(const LpProblem& p, const std::string& path,
                        ProblemFormat format);

}  // namespace lpfom

#endif  // LPFOM_IO_H_
