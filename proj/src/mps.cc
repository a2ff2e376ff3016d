#include <cctype>
#include <cstdlib>
#include <optional>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpfom/errors.h"
#include "lpfom/io.h"

namespace lpfom {
namespace {

enum class Section {
  kNone,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEnd
};

enum class RowType { kObjective, kFree, kEqual, kGreater, kLess };

struct RowInfo {
  RowType type;
  double rhs = 0.0;
  std::optional<double> range;
  std::vector<std::pair<int, double>> entries;  // (column, value)
};

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double ParseNumber(std::string_view token, int line) {
  std::string s(token);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw ParseError(line, "expected a number, got '" + s + "'");
  }
  if (std::isnan(v)) throw ParseError(line, "NaN value");
  return v;
}

class MpsReader {
 public:
  LpProblem Read(std::string_view text) {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size() && section_ != Section::kEnd) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      pos = eol + 1;
      HandleLine(line, line_no);
      if (eol == text.size()) break;
    }
    if (section_ != Section::kEnd) throw ParseError(line_no, "missing ENDATA");
    if (objective_row_ < 0) throw ParseError(0, "no objective (N) row");
    return Build();
  }

 private:
  void HandleLine(std::string_view line, int line_no) {
    if (line.empty() || line.front() == '*') return;
    const std::vector<std::string_view> tok = Tokenize(line);
    if (tok.empty()) return;
    const bool header = !std::isspace(static_cast<unsigned char>(line.front()));
    if (header) {
      StartSection(tok, line_no);
      return;
    }
    switch (section_) {
      case Section::kObjSense:
        ReadObjSense(tok.front(), line_no);
        break;
      case Section::kRows:
        ReadRow(tok, line_no);
        break;
      case Section::kColumns:
        ReadColumn(tok, line_no);
        break;
      case Section::kRhs:
        ReadRhsOrRange(tok, line_no, /*range=*/false);
        break;
      case Section::kRanges:
        ReadRhsOrRange(tok, line_no, /*range=*/true);
        break;
      case Section::kBounds:
        ReadBound(tok, line_no);
        break;
      default:
        throw ParseError(line_no, "data line outside of a section");
    }
  }

  void StartSection(const std::vector<std::string_view>& tok, int line_no) {
    const std::string_view key = tok.front();
    if (key == "NAME") {
      section_ = Section::kName;
      if (tok.size() > 1) name_ = std::string(tok[1]);
    } else if (key == "OBJSENSE") {
      section_ = Section::kObjSense;
      if (tok.size() > 1) ReadObjSense(tok[1], line_no);
    } else if (key == "ROWS") {
      section_ = Section::kRows;
    } else if (key == "COLUMNS") {
      section_ = Section::kColumns;
    } else if (key == "RHS") {
      section_ = Section::kRhs;
    } else if (key == "RANGES") {
      section_ = Section::kRanges;
    } else if (key == "BOUNDS") {
      section_ = Section::kBounds;
    } else if (key == "ENDATA") {
      section_ = Section::kEnd;
    } else {
      throw ParseError(line_no, "unknown section '" + std::string(key) + "'");
    }
  }

  void ReadObjSense(std::string_view sense, int line_no) {
    if (sense == "MIN" || sense == "MINIMIZE") return;
    throw ParseError(line_no, "unsupported objective sense '" +
                                  std::string(sense) + "'");
  }

  void ReadRow(const std::vector<std::string_view>& tok, int line_no) {
    if (tok.size() != 2) throw ParseError(line_no, "ROWS entry needs type and name");
    RowType type;
    if (tok[0] == "N") {
      type = objective_row_ < 0 ? RowType::kObjective : RowType::kFree;
    } else if (tok[0] == "E") {
      type = RowType::kEqual;
    } else if (tok[0] == "G") {
      type = RowType::kGreater;
    } else if (tok[0] == "L") {
      type = RowType::kLess;
    } else {
      throw ParseError(line_no, "unknown row type '" + std::string(tok[0]) + "'");
    }
    std::string name(tok[1]);
    if (row_index_.count(name)) {
      throw ParseError(line_no, "duplicate row name '" + name + "'");
    }
    row_index_[name] = static_cast<int>(rows_.size());
    if (type == RowType::kObjective) objective_row_ = static_cast<int>(rows_.size());
    RowInfo info;
    info.type = type;
    rows_.push_back(std::move(info));
  }

  int RowOrThrow(std::string_view name, int line_no) const {
    auto it = row_index_.find(std::string(name));
    if (it == row_index_.end()) {
      throw ParseError(line_no, "unknown row '" + std::string(name) + "'");
    }
    return it->second;
  }

  void ReadColumn(const std::vector<std::string_view>& tok, int line_no) {
    if (tok.size() >= 2 && tok[1] == "'MARKER'") return;
    if (tok.size() != 3 && tok.size() != 5) {
      throw ParseError(line_no, "COLUMNS entry needs name and row/value pairs");
    }
    std::string name(tok[0]);
    auto it = col_index_.find(name);
    int col;
    if (it == col_index_.end()) {
      col = static_cast<int>(col_names_.size());
      col_index_[name] = col;
      col_names_.push_back(name);
      objective_.push_back(0.0);
    } else {
      col = it->second;
    }
    for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
      const int row = RowOrThrow(tok[k], line_no);
      const double value = ParseNumber(tok[k + 1], line_no);
      if (row == objective_row_) {
        objective_[col] += value;
      } else if (rows_[row].type != RowType::kFree) {
        rows_[row].entries.emplace_back(col, value);
      }
    }
  }

  void ReadRhsOrRange(const std::vector<std::string_view>& tok, int line_no,
                      bool range) {
    // An odd token count means a leading set name.
    const std::size_t first = tok.size() % 2 == 1 ? 1 : 0;
    if (tok.size() - first < 2 || (tok.size() - first) % 2 != 0) {
      throw ParseError(line_no, range ? "malformed RANGES entry"
                                      : "malformed RHS entry");
    }
    for (std::size_t k = first; k + 1 < tok.size(); k += 2) {
      const int row = RowOrThrow(tok[k], line_no);
      const double value = ParseNumber(tok[k + 1], line_no);
      if (range) {
        if (row == objective_row_ || rows_[row].type == RowType::kFree) {
          throw ParseError(line_no, "range on a free row");
        }
        rows_[row].range = value;
      } else if (row == objective_row_) {
        objective_offset_ = -value;
      } else {
        rows_[row].rhs = value;
      }
    }
  }

  void EnsureBounds() {
    if (lower_.size() != col_names_.size()) {
      lower_.assign(col_names_.size(), 0.0);
      upper_.assign(col_names_.size(), kInfinity);
      lower_set_.assign(col_names_.size(), false);
    }
  }

  int ColumnOrNeg(std::string_view name) const {
    auto it = col_index_.find(std::string(name));
    return it == col_index_.end() ? -1 : it->second;
  }

  void ReadBound(const std::vector<std::string_view>& tok, int line_no) {
    EnsureBounds();
    if (tok.size() < 2) throw ParseError(line_no, "malformed BOUNDS entry");
    const std::string_view type = tok[0];
    const bool needs_value = type == "LO" || type == "UP" || type == "FX";
    const bool valueless =
        type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (!needs_value && !valueless) {
      throw ParseError(line_no, "unknown bound type '" + std::string(type) + "'");
    }
    std::string_view col_name;
    double value = 0.0;
    if (needs_value) {
      if (tok.size() == 4) {
        col_name = tok[2];
        value = ParseNumber(tok[3], line_no);
      } else if (tok.size() == 3) {
        col_name = tok[1];
        value = ParseNumber(tok[2], line_no);
      } else {
        throw ParseError(line_no, "malformed BOUNDS entry");
      }
    } else {
      if (tok.size() == 2) {
        col_name = tok[1];
      } else if (ColumnOrNeg(tok[2]) >= 0) {
        col_name = tok[2];
      } else {
        col_name = tok[1];
      }
    }
    const int col = ColumnOrNeg(col_name);
    if (col < 0) {
      throw ParseError(line_no,
                       "bound on unknown column '" + std::string(col_name) + "'");
    }
    if (type == "LO") {
      lower_[col] = value;
      lower_set_[col] = true;
    } else if (type == "UP") {
      upper_[col] = value;
      if (value < 0.0 && !lower_set_[col] && lower_[col] == 0.0) {
        lower_[col] = -kInfinity;
      }
    } else if (type == "FX") {
      lower_[col] = upper_[col] = value;
      lower_set_[col] = true;
    } else if (type == "FR") {
      lower_[col] = -kInfinity;
      upper_[col] = kInfinity;
      lower_set_[col] = true;
    } else if (type == "MI") {
      lower_[col] = -kInfinity;
      lower_set_[col] = true;
    } else if (type == "PL") {
      upper_[col] = kInfinity;
    } else {  // BV
      lower_[col] = 0.0;
      upper_[col] = 1.0;
      lower_set_[col] = true;
    }
  }

  LpProblem Build() {
    EnsureBounds();
    const int n = static_cast<int>(col_names_.size());
    std::vector<Triplet> g_t;
    std::vector<Triplet> a_t;
    LpProblem p;
    p.name = name_;
    p.storage = Storage::kSparseCsr;
    p.c = objective_;
    p.objective_offset = objective_offset_;
    p.l = lower_;
    p.u = upper_;
    auto add_row = [](std::vector<Triplet>& t, std::vector<double>& rhs,
                      const RowInfo& row, double sign, double value) {
      const int index = static_cast<int>(rhs.size());
      for (const auto& [col, v] : row.entries) t.push_back({index, col, sign * v});
      rhs.push_back(sign * value);
    };
    for (const RowInfo& row : rows_) {
      if (row.type == RowType::kObjective || row.type == RowType::kFree) continue;
      double lo = -kInfinity;
      double hi = kInfinity;
      const double r = row.rhs;
      switch (row.type) {
        case RowType::kEqual:
          lo = hi = r;
          if (row.range) {
            if (*row.range > 0) hi = r + *row.range;
            if (*row.range < 0) lo = r + *row.range;
          }
          break;
        case RowType::kGreater:
          lo = r;
          if (row.range) hi = r + std::abs(*row.range);
          break;
        case RowType::kLess:
          hi = r;
          if (row.range) lo = r - std::abs(*row.range);
          break;
        default:
          break;
      }
      if (lo == hi) {
        add_row(a_t, p.b, row, 1.0, lo);
        continue;
      }
      if (std::isfinite(lo)) add_row(g_t, p.h, row, 1.0, lo);
      if (std::isfinite(hi)) add_row(g_t, p.h, row, -1.0, hi);
    }
    p.G = ConstraintMatrix::FromTriplets(static_cast<int>(p.h.size()), n, g_t,
                                         Storage::kSparseCsr);
    p.A = ConstraintMatrix::FromTriplets(static_cast<int>(p.b.size()), n, a_t,
                                         Storage::kSparseCsr);
    return p;
  }

  Section section_ = Section::kNone;
  std::string name_;
  std::vector<RowInfo> rows_;
  std::unordered_map<std::string, int> row_index_;
  int objective_row_ = -1;
  std::vector<std::string> col_names_;
  std::unordered_map<std::string, int> col_index_;
  std::vector<double> objective_;
  double objective_offset_ = 0.0;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> lower_set_;
};

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

LpProblem parse_mps(std::string_view text) { return MpsReader().Read(text); }

std::string write_mps(const LpProblem& p) {
  ensure_valid(p);
  const int n = p.num_variables();
  const int m1 = p.num_inequalities();
  const int m2 = p.num_equalities();
  // Column-major view of both blocks.
  std::vector<std::vector<std::pair<std::string, double>>> cols(n);
  p.G.ForEachNonzero([&](int i, int j, double v) {
    cols[j].emplace_back("G" + std::to_string(i), v);
  });
  p.A.ForEachNonzero([&](int i, int j, double v) {
    cols[j].emplace_back("E" + std::to_string(i), v);
  });

  std::ostringstream out;
  out << "NAME " << (p.name.empty() ? "LPFOM" : p.name) << "\n";
  out << "ROWS\n N OBJ\n";
  for (int i = 0; i < m1; ++i) out << " G G" << i << "\n";
  for (int i = 0; i < m2; ++i) out << " E E" << i << "\n";
  out << "COLUMNS\n";
  for (int j = 0; j < n; ++j) {
    const std::string name = "X" + std::to_string(j);
    if (p.c[j] != 0.0 || cols[j].empty()) {
      out << " " << name << " OBJ " << FormatNumber(p.c[j]) << "\n";
    }
    for (const auto& [row, v] : cols[j]) {
      out << " " << name << " " << row << " " << FormatNumber(v) << "\n";
    }
  }
  out << "RHS\n";
  if (p.objective_offset != 0.0) {
    out << " RHS OBJ " << FormatNumber(-p.objective_offset) << "\n";
  }
  for (int i = 0; i < m1; ++i) {
    if (p.h[i] != 0.0) out << " RHS G" << i << " " << FormatNumber(p.h[i]) << "\n";
  }
  for (int i = 0; i < m2; ++i) {
    if (p.b[i] != 0.0) out << " RHS E" << i << " " << FormatNumber(p.b[i]) << "\n";
  }
  out << "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const std::string name = "X" + std::to_string(j);
    const double lo = p.l[j];
    const double hi = p.u[j];
    if (lo == -kInfinity && hi == kInfinity) {
      out << " FR BND " << name << "\n";
      continue;
    }
    if (lo == hi) {
      out << " FX BND " << name << " " << FormatNumber(lo) << "\n";
      continue;
    }
    if (lo == -kInfinity) {
      out << " MI BND " << name << "\n";
    } else if (lo != 0.0) {
      out << " LO BND " << name << " " << FormatNumber(lo) << "\n";
    }
    if (hi != kInfinity) out << " UP BND " << name << " " << FormatNumber(hi) << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace lpfom
